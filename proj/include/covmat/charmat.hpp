#pragma once

#include "covmat/core.hpp"
#include "covmat/matrix.hpp"

#include <string_view>

namespace covmat {

/// Type-1 (gamma) and type-2 (pi) characteristic matrices of a block family,
/// together with the per-block membership vectors they were folded from.
///
/// gamma = M * M^T (boolean product) and pi = M # M^T (sharp product), where M
/// is the n x m membership matrix. Row i of gamma is the union of the blocks
/// containing object i; for a covered object row i of pi is the intersection
/// of those blocks. An uncovered object's pi row holds 2 where the column
/// object lies in every block and 1 elsewhere.
class CharCache {
public:
    /// Assembles a cache from precomputed parts, checking shapes only.
    static CharCache from_parts(BlockFamily family, BoolMatrix gamma, TritMatrix pi);

    const BlockFamily& family() const noexcept { return family_; }
    const Universe& universe() const noexcept { return family_.universe(); }
    const BoolMatrix& gamma() const noexcept { return gamma_; }
    const TritMatrix& pi() const noexcept { return pi_; }
    std::size_t object_count() const noexcept { return family_.object_count(); }
    std::size_t block_count() const noexcept { return family_.block_count(); }
    const ObjectSet& block_vector(std::size_t block) const { return family_.members(block); }

    friend bool operator==(const CharCache& a, const CharCache& b) = default;

private:
    CharCache(BlockFamily family, BoolMatrix gamma, TritMatrix pi)
        : family_(std::move(family)), gamma_(std::move(gamma)), pi_(std::move(pi)) {}

    BlockFamily family_;
    BoolMatrix gamma_;
    TritMatrix pi_;
};

/// n x m matrix with out[i][j] = 1 iff object i is in block j.
BoolMatrix membership_matrix(const BlockFamily& family);

/// Per-block type-1 matrix: member rows copy the membership vector, other rows are zero.
BoolMatrix block_gamma(const ObjectSet& members);
BoolMatrix block_gamma(const BlockFamily& family, std::string_view block);
/// Per-block type-2 matrix: member rows equal the membership vector d,
/// non-member rows equal d + 1 entrywise.
TritMatrix block_pi(const ObjectSet& members);
TritMatrix block_pi(const BlockFamily& family, std::string_view block);

/// Row `object` of gamma: union of the blocks containing it.
BitVector gamma_row(const BlockFamily& family, std::size_t object);

struct TritVector {
    BitVector ge1;
    BitVector ge2;
};

/// Row `object` of pi. `core` must be the intersection of all blocks.
TritVector pi_row(const BlockFamily& family, std::size_t object, const ObjectSet& core);
/// Column `object` of pi. `covered` must be the union of all blocks and
/// `core` their intersection.
TritVector pi_column(const BlockFamily& family, std::size_t object, const ObjectSet& covered,
                     const ObjectSet& core);

/// Intersection of every block of the family (all-ones for an empty family).
ObjectSet blocks_core(const BlockFamily& family);

/// Builds gamma and pi row by row from the block vectors. Debug builds also
/// compare against the definitional products and throw InvariantError on divergence.
CharCache build_cache(const BlockFamily& family);

/// Definitional constructions through the full matrix products.
BoolMatrix definitional_gamma(const BlockFamily& family);
TritMatrix definitional_pi(const BlockFamily& family);

/// True iff the cache's gamma and pi equal the definitional products of its family.
bool matches_definition(const CharCache& cache);

} // namespace covmat
