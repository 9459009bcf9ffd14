#pragma once

#include "covmat/core.hpp"

#include <string_view>
#include <vector>

namespace covmat {

/// A total map from a source universe onto a target universe. Every target
/// object has a non-empty fiber.
class ConsistentMap {
public:
    /// assignment[i] is the target index of source object i. Throws
    /// PreconditionError if the map is not onto the target.
    ConsistentMap(Universe source, Universe target, std::vector<std::size_t> assignment);

    const Universe& source() const noexcept { return source_; }
    const Universe& target() const noexcept { return target_; }
    std::size_t image(std::size_t source_object) const { return assignment_.at(source_object); }
    const std::vector<std::size_t>& assignment() const noexcept { return assignment_; }

    /// Preimage of one target object.
    const ObjectSet& fiber(std::size_t target_object) const { return fibers_.at(target_object); }
    /// Fiber containing a source object, [x]_f.
    const ObjectSet& fiber_of(std::size_t source_object) const { return fibers_[image(source_object)]; }

    ObjectSet forward(const ObjectSet& source_set) const;
    ObjectSet pullback(const ObjectSet& target_set) const;
    /// True iff the set is a union of fibers.
    bool is_saturated(const ObjectSet& source_set) const;

    static ConsistentMap identity(const Universe& universe);

private:
    Universe source_;
    Universe target_;
    std::vector<std::size_t> assignment_;
    std::vector<ObjectSet> fibers_;
};

/// Parses `x -> y` lines; the target universe is the right-hand sides in
/// first-appearance order. Every source object must be mapped exactly once.
ConsistentMap parse_map(const Universe& source, std::string_view text);

/// True iff every fiber [x]_f lies inside the neighborhood N(x).
/// Requires a covering of the map's source universe.
bool check_consistent(const BlockFamily& family, const ConsistentMap& map);

/// Image family f(C) over the target universe, block names preserved.
BlockFamily induced_family(const BlockFamily& family, const ConsistentMap& map);

struct CompressedApprox {
    ObjectSet sh;
    ObjectSet sl;
    ObjectSet target_query;  // f(X)
    ObjectSet target_sh;     // SH(f(X)) in the induced covering
    ObjectSet target_sl;     // SL(f(X)) in the induced covering
};

/// SH and SL of an f-saturated query computed on the induced covering and
/// pulled back. Throws PreconditionError for an inconsistent map or a
/// non-saturated query.
CompressedApprox approx_via_compression(const BlockFamily& family, const ConsistentMap& map,
                                        const ObjectSet& query);

/// Groups objects with identical neighborhoods; each group maps to one target
/// object named y1, y2, ... in first-appearance order. Always consistent.
ConsistentMap neighborhood_quotient(const BlockFamily& family);

} // namespace covmat
