#include "covmat/approx.hpp"

#include "covmat/error.hpp"

#include <string>

namespace covmat {

namespace {

void require_covering(const BlockFamily& family) {
    if (!family.is_covering())
        throw PreconditionError("approximations require a covering; the family leaves objects uncovered");
}

void require_query(const BlockFamily& family, const ObjectSet& query) {
    if (query.size() != family.object_count())
        throw DimensionError("query set length does not match the universe size");
}

// Reads a ⊙ result column; a 2 cannot occur for reflexive left operands.
ObjectSet read_lower(const TritMatrix& column) {
    if (column.has_twos())
        throw InvariantError("lower approximation produced an entry equal to 2");
    return column.to_bool().column_vector(0);
}

ObjectSet read_upper(const BoolMatrix& column) { return column.column_vector(0); }

} // namespace

std::string_view operator_name(Operator op) noexcept {
    switch (op) {
    case Operator::SH: return "SH";
    case Operator::SL: return "SL";
    case Operator::IH: return "IH";
    case Operator::IL: return "IL";
    case Operator::XH: return "XH";
    case Operator::XL: return "XL";
    }
    return "?";
}

const ObjectSet& ApproxSextuple::get(Operator op) const {
    switch (op) {
    case Operator::SH: return sh;
    case Operator::SL: return sl;
    case Operator::IH: return ih;
    case Operator::IL: return il;
    case Operator::XH: return xh;
    case Operator::XL: return xl;
    }
    throw InvariantError("unknown operator");
}

ObjectSet neighborhood(const BlockFamily& family, std::size_t object) {
    ObjectSet out = family.universe().full_set();
    bool covered = false;
    for (const auto& block : family.blocks()) {
        if (block.members->test(object)) {
            out &= *block.members;
            covered = true;
        }
    }
    if (!covered)
        throw PreconditionError("object '" + family.universe().label(object) + "' is not covered");
    return out;
}

ObjectSet indiscernible(const BlockFamily& family, std::size_t object) {
    ObjectSet out = family.universe().empty_set();
    for (const auto& block : family.blocks())
        if (block.members->test(object))
            out |= *block.members;
    if (out.none())
        throw PreconditionError("object '" + family.universe().label(object) + "' is not covered");
    return out;
}

BoolMatrix pi_transpose_pi(const CharCache& cache) {
    const BoolMatrix p = cache.pi().to_bool();
    return bool_product(transpose(p), p);
}

bool pi_transpose_pi_equals_pi(const CharCache& cache) {
    return pi_transpose_pi(cache) == cache.pi().to_bool();
}

ApproxSextuple approx_matrix(const CharCache& cache, const ObjectSet& query) {
    require_covering(cache.family());
    require_query(cache.family(), query);

    const BoolMatrix x = BoolMatrix::column(query);
    const BoolMatrix& gamma = cache.gamma();
    const BoolMatrix pi = cache.pi().to_bool();
    const BoolMatrix ptp = bool_product(transpose(pi), pi);

    ApproxSextuple out;
    out.sh = read_upper(bool_product(gamma, x));
    out.sl = read_lower(sharp_product(gamma, x));
    out.ih = read_upper(bool_product(pi, x));
    out.il = read_lower(sharp_product(pi, x));
    out.xh = read_upper(bool_product(ptp, x));
    out.xl = read_lower(sharp_product(ptp, x));
    return out;
}

ApproxSextuple approx_oracle(const BlockFamily& family, const ObjectSet& query) {
    require_covering(family);
    require_query(family, query);
    const Universe& u = family.universe();
    const std::size_t n = u.size();

    auto second_upper = [&](const ObjectSet& x) {
        ObjectSet out = u.empty_set();
        for (const auto& block : family.blocks())
            if (block.members->intersects(x))
                out |= *block.members;
        return out;
    };

    std::vector<ObjectSet> neighborhoods;
    neighborhoods.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        neighborhoods.push_back(neighborhood(family, i));

    ApproxSextuple out;
    out.sh = second_upper(query);
    out.sl = ~second_upper(~query);
    out.ih = u.empty_set();
    out.il = u.empty_set();
    out.xh = u.empty_set();
    out.xl = u.empty_set();
    for (std::size_t i = 0; i < n; ++i) {
        const ObjectSet& nb = neighborhoods[i];
        if (nb.intersects(query)) {
            out.ih.set(i);
            out.xh |= nb;
        }
        if (nb.is_subset_of(query)) {
            out.il.set(i);
            out.xl |= nb;
        }
    }
    return out;
}

const OperatorComparison& EquivalenceReport::get(Operator op) const {
    for (const auto& e : entries)
        if (e.op == op)
            return e;
    throw InvariantError("operator missing from report");
}

bool EquivalenceReport::all_match() const {
    for (const auto& e : entries)
        if (!e.matches)
            return false;
    return true;
}

EquivalenceReport equivalence_report(const CharCache& cache, const ObjectSet& query) {
    const auto matrix = approx_matrix(cache, query);
    const auto oracle = approx_oracle(cache.family(), query);
    EquivalenceReport report;
    for (std::size_t k = 0; k < kAllOperators.size(); ++k) {
        const Operator op = kAllOperators[k];
        const auto& mv = matrix.get(op);
        const auto& ov = oracle.get(op);
        report.entries[k] = OperatorComparison{op, mv == ov, mv, ov};
    }
    return report;
}

} // namespace covmat
