#pragma once

#include "covmat/charmat.hpp"
#include "covmat/core.hpp"

#include <array>
#include <string_view>

namespace covmat {

enum class Operator { SH, SL, IH, IL, XH, XL };

inline constexpr std::array<Operator, 6> kAllOperators = {
    Operator::SH, Operator::SL, Operator::IH, Operator::IL, Operator::XH, Operator::XL};

std::string_view operator_name(Operator op) noexcept;

/// The six upper/lower approximations of one query set: SH/SL from blocks,
/// IH/IL from neighborhoods as points, XH/XL from neighborhoods as granules.
struct ApproxSextuple {
    ObjectSet sh, sl, ih, il, xh, xl;

    const ObjectSet& get(Operator op) const;
    friend bool operator==(const ApproxSextuple& a, const ApproxSextuple& b) = default;
};

/// N(x): intersection of the blocks containing x. Throws PreconditionError if x is uncovered.
ObjectSet neighborhood(const BlockFamily& family, std::size_t object);
/// I(x): union of the blocks containing x. Throws PreconditionError if x is uncovered.
ObjectSet indiscernible(const BlockFamily& family, std::size_t object);

/// Matrix route: SH = G*X, SL = G#X, IH = P*X, IL = P#X, XH = (P^T*P)*X,
/// XL = (P^T*P)#X with G = gamma and P = pi. Requires a covering.
ApproxSextuple approx_matrix(const CharCache& cache, const ObjectSet& query);

/// Set-theoretic route evaluated straight from the blocks. Requires a covering.
ApproxSextuple approx_oracle(const BlockFamily& family, const ObjectSet& query);

struct OperatorComparison {
    Operator op;
    bool matches;
    ObjectSet matrix_value;
    ObjectSet oracle_value;
};

struct EquivalenceReport {
    std::array<OperatorComparison, 6> entries;

    const OperatorComparison& get(Operator op) const;
    bool all_match() const;
};

/// Operator-by-operator comparison of the two routes. XL is known to be able
/// to differ; the report records it rather than failing.
EquivalenceReport equivalence_report(const CharCache& cache, const ObjectSet& query);

/// P^T * P for the boolean reading of pi. Requires pi without 2s.
BoolMatrix pi_transpose_pi(const CharCache& cache);

/// Reported check: whether P^T * P equals P. Holds e.g. for partitions; fails
/// for coverings whose neighborhood relation is not symmetric.
bool pi_transpose_pi_equals_pi(const CharCache& cache);

} // namespace covmat
