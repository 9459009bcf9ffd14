#include "covmat/compress.hpp"

#include "covmat/approx.hpp"
#include "covmat/charmat.hpp"
#include "covmat/error.hpp"

#include <map>
#include <unordered_map>

namespace covmat {

ConsistentMap::ConsistentMap(Universe source, Universe target, std::vector<std::size_t> assignment)
    : source_(std::move(source)), target_(std::move(target)), assignment_(std::move(assignment)) {
    if (assignment_.size() != source_.size())
        throw PreconditionError("map must assign every source object");
    fibers_.assign(target_.size(), source_.empty_set());
    for (std::size_t i = 0; i < assignment_.size(); ++i) {
        if (assignment_[i] >= target_.size())
            throw PreconditionError("map target index out of range");
        fibers_[assignment_[i]].set(i);
    }
    for (std::size_t t = 0; t < fibers_.size(); ++t)
        if (fibers_[t].none())
            throw PreconditionError("target object '" + target_.label(t) + "' has an empty fiber");
}

ConsistentMap ConsistentMap::identity(const Universe& universe) {
    std::vector<std::size_t> assignment(universe.size());
    for (std::size_t i = 0; i < assignment.size(); ++i)
        assignment[i] = i;
    return ConsistentMap(universe, universe, std::move(assignment));
}

ObjectSet ConsistentMap::forward(const ObjectSet& source_set) const {
    if (source_set.size() != source_.size())
        throw DimensionError("set does not match the source universe");
    ObjectSet out = target_.empty_set();
    source_set.for_each_one([&](std::size_t i) { out.set(assignment_[i]); });
    return out;
}

ObjectSet ConsistentMap::pullback(const ObjectSet& target_set) const {
    if (target_set.size() != target_.size())
        throw DimensionError("set does not match the target universe");
    ObjectSet out = source_.empty_set();
    target_set.for_each_one([&](std::size_t t) { out |= fibers_[t]; });
    return out;
}

bool ConsistentMap::is_saturated(const ObjectSet& source_set) const {
    return pullback(forward(source_set)) == source_set;
}

ConsistentMap parse_map(const Universe& source, std::string_view text) {
    std::vector<std::string> target_labels;
    std::unordered_map<std::string, std::size_t> target_index;
    std::vector<std::size_t> assignment(source.size());
    std::vector<bool> assigned(source.size(), false);

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const auto eol = text.find('\n', pos);
        auto line = text.substr(pos, eol == std::string_view::npos ? text.npos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() : eol + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;

        const auto arrow = line.find("->");
        if (arrow == std::string_view::npos)
            throw ParseError(line_no, "expected '<source> -> <target>'");
        const auto lhs = trim(line.substr(0, arrow));
        const auto rhs = trim(line.substr(arrow + 2));
        if (split_whitespace(lhs).size() != 1 || split_whitespace(rhs).size() != 1 ||
            !Universe::valid_label(rhs))
            throw ParseError(line_no, "expected '<source> -> <target>'");

        const auto src = source.find(lhs);
        if (!src)
            throw ParseError(line_no, "unknown object '" + std::string(lhs) + "'",
                             ParseErrorKind::UnknownLabel);
        if (assigned[*src])
            throw ParseError(line_no, "object '" + std::string(lhs) + "' mapped twice");
        auto [it, inserted] = target_index.emplace(std::string(rhs), target_labels.size());
        if (inserted)
            target_labels.emplace_back(rhs);
        assignment[*src] = it->second;
        assigned[*src] = true;
    }
    for (std::size_t i = 0; i < source.size(); ++i)
        if (!assigned[i])
            throw ParseError(0, "object '" + source.label(i) + "' is not mapped");
    return ConsistentMap(source, Universe(std::move(target_labels)), std::move(assignment));
}

bool check_consistent(const BlockFamily& family, const ConsistentMap& map) {
    if (!(family.universe() == map.source()))
        throw PreconditionError("map source universe differs from the family's universe");
    if (!family.is_covering())
        throw PreconditionError("consistency is defined for coverings only");
    for (std::size_t i = 0; i < family.object_count(); ++i)
        if (!map.fiber_of(i).is_subset_of(neighborhood(family, i)))
            return false;
    return true;
}

BlockFamily induced_family(const BlockFamily& family, const ConsistentMap& map) {
    if (!check_consistent(family, map))
        throw PreconditionError("map is not consistent with the covering");
    std::vector<Block> blocks;
    blocks.reserve(family.block_count());
    for (const auto& block : family.blocks())
        blocks.emplace_back(block.name, map.forward(*block.members));
    return BlockFamily(map.target(), std::move(blocks));
}

CompressedApprox approx_via_compression(const BlockFamily& family, const ConsistentMap& map,
                                        const ObjectSet& query) {
    const BlockFamily target_family = induced_family(family, map);
    if (!map.is_saturated(query))
        throw PreconditionError("query set is not a union of fibers of the map");

    CompressedApprox out;
    out.target_query = map.forward(query);
    const auto approx = approx_matrix(build_cache(target_family), out.target_query);
    out.target_sh = approx.sh;
    out.target_sl = approx.sl;
    out.sh = map.pullback(approx.sh);
    out.sl = map.pullback(approx.sl);
    return out;
}

ConsistentMap neighborhood_quotient(const BlockFamily& family) {
    if (!family.is_covering())
        throw PreconditionError("quotient requires a covering");
    const std::size_t n = family.object_count();
    std::map<std::vector<std::size_t>, std::size_t> groups;
    std::vector<std::string> labels;
    std::vector<std::size_t> assignment(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto [it, inserted] = groups.emplace(neighborhood(family, i).ones(), labels.size());
        if (inserted)
            labels.push_back("y" + std::to_string(labels.size() + 1));
        assignment[i] = it->second;
    }
    return ConsistentMap(family.universe(), Universe(std::move(labels)), std::move(assignment));
}

} // namespace covmat
