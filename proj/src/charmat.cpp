#include "covmat/charmat.hpp"

#include "covmat/error.hpp"
#include "covmat/parallel.hpp"

namespace covmat {

CharCache CharCache::from_parts(BlockFamily family, BoolMatrix gamma, TritMatrix pi) {
    const std::size_t n = family.object_count();
    if (gamma.rows() != n || gamma.cols() != n || pi.rows() != n || pi.cols() != n)
        throw DimensionError("characteristic matrices do not match the universe size");
    return CharCache(std::move(family), std::move(gamma), std::move(pi));
}

BoolMatrix membership_matrix(const BlockFamily& family) {
    BoolMatrix out(family.object_count(), family.block_count());
    for (std::size_t b = 0; b < family.block_count(); ++b)
        family.members(b).for_each_one([&](std::size_t i) { out.set(i, b); });
    return out;
}

BoolMatrix block_gamma(const ObjectSet& members) {
    BoolMatrix out(members.size(), members.size());
    members.for_each_one([&](std::size_t i) { out.row(i) = members; });
    return out;
}

BoolMatrix block_gamma(const BlockFamily& family, std::string_view block) {
    return block_gamma(family.members(family.block_index(block)));
}

// Only two distinct rows exist: d for members and d + 1 for the rest.
TritMatrix block_pi(const ObjectSet& members) {
    const std::size_t n = members.size();
    const BitVector ones(n, true);
    TritMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (members.test(i))
            out.set_row(i, members, BitVector(n));
        else
            out.set_row(i, ones, members);
    }
    return out;
}

TritMatrix block_pi(const BlockFamily& family, std::string_view block) {
    return block_pi(family.members(family.block_index(block)));
}

BitVector gamma_row(const BlockFamily& family, std::size_t object) {
    BitVector row(family.object_count());
    for (const auto& block : family.blocks())
        if (block.members->test(object))
            row |= *block.members;
    return row;
}

TritVector pi_row(const BlockFamily& family, std::size_t object, const ObjectSet& core) {
    const std::size_t n = family.object_count();
    BitVector ge1(n, true);
    bool covered = false;
    for (const auto& block : family.blocks()) {
        if (block.members->test(object)) {
            ge1 &= *block.members;
            covered = true;
        }
    }
    if (covered)
        return {std::move(ge1), BitVector(n)};
    return {std::move(ge1), core};
}

// pi[i][k] >= 1 iff no block holds i without k (covered i), and every
// uncovered i gets 1 + [k lies in every block].
TritVector pi_column(const BlockFamily& family, std::size_t object, const ObjectSet& covered,
                     const ObjectSet& core) {
    const std::size_t n = family.object_count();
    BitVector excluded(n);
    for (const auto& block : family.blocks())
        if (!block.members->test(object))
            excluded |= *block.members;
    BitVector uncovered = ~covered;
    BitVector ge1 = ~excluded;
    ge1 |= uncovered;
    BitVector ge2 = core.test(object) ? std::move(uncovered) : BitVector(n);
    return {std::move(ge1), std::move(ge2)};
}

ObjectSet blocks_core(const BlockFamily& family) {
    ObjectSet core = family.universe().full_set();
    for (const auto& block : family.blocks())
        core &= *block.members;
    return core;
}

CharCache build_cache(const BlockFamily& family) {
    const std::size_t n = family.object_count();
    const std::size_t m = family.block_count();
    if (m == 0)
        throw PreconditionError("a family needs at least one block");

    // Blocks containing each object, so every row folds only its own blocks.
    std::vector<std::vector<std::size_t>> containing(n);
    for (std::size_t b = 0; b < m; ++b)
        family.members(b).for_each_one([&](std::size_t i) { containing[i].push_back(b); });
    const ObjectSet core = blocks_core(family);

    BoolMatrix gamma(n, n);
    TritMatrix pi(n, n);
    parallel_for(n, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            if (containing[i].empty()) {
                pi.set_row(i, BitVector(n, true), core);
                continue;
            }
            BitVector& g = gamma.row(i);
            BitVector p = family.members(containing[i].front());
            for (const auto b : containing[i]) {
                g |= family.members(b);
                p &= family.members(b);
            }
            pi.set_row(i, std::move(p), BitVector(n));
        }
    });

    auto cache = CharCache::from_parts(family, std::move(gamma), std::move(pi));
#ifndef NDEBUG
    if (!matches_definition(cache))
        throw InvariantError("fast construction diverged from the definitional products");
#endif
    return cache;
}

BoolMatrix definitional_gamma(const BlockFamily& family) {
    const auto m = membership_matrix(family);
    return bool_product(m, transpose(m));
}

TritMatrix definitional_pi(const BlockFamily& family) {
    const auto m = membership_matrix(family);
    return sharp_product(m, transpose(m));
}

bool matches_definition(const CharCache& cache) {
    return cache.gamma() == definitional_gamma(cache.family()) &&
           cache.pi() == definitional_pi(cache.family());
}

} // namespace covmat
