#include "covmat/core.hpp"

#include "covmat/error.hpp"

#include <unordered_set>

namespace covmat {

namespace {

bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v';
}

std::string_view strip_comment(std::string_view line) {
    const auto hash = line.find('#');
    return hash == std::string_view::npos ? line : line.substr(0, hash);
}

} // namespace

std::string_view trim(std::string_view text) {
    while (!text.empty() && is_space(text.front()))
        text.remove_prefix(1);
    while (!text.empty() && is_space(text.back()))
        text.remove_suffix(1);
    return text;
}

std::vector<std::string_view> split_whitespace(std::string_view text) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && is_space(text[i]))
            ++i;
        const std::size_t start = i;
        while (i < text.size() && !is_space(text[i]))
            ++i;
        if (i > start)
            out.push_back(text.substr(start, i - start));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Universe

bool Universe::valid_label(std::string_view label) noexcept {
    if (label.empty())
        return false;
    for (const char c : label)
        if (is_space(c) || c == '#' || c == ':' || c == ',')
            return false;
    return true;
}

Universe::Universe(std::vector<std::string> labels) {
    if (labels.empty())
        throw PreconditionError("universe must contain at least one object");
    auto data = std::make_shared<Data>();
    data->index.reserve(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (!valid_label(labels[i]))
            throw PreconditionError("invalid object label '" + labels[i] + "'");
        if (!data->index.emplace(labels[i], i).second)
            throw PreconditionError("duplicate object label '" + labels[i] + "'");
    }
    data->labels = std::move(labels);
    data_ = std::move(data);
}

std::optional<std::size_t> Universe::find(std::string_view label) const {
    const auto it = data_->index.find(std::string(label));
    if (it == data_->index.end())
        return std::nullopt;
    return it->second;
}

std::size_t Universe::index(std::string_view label) const {
    if (const auto i = find(label))
        return *i;
    throw PreconditionError("unknown object '" + std::string(label) + "'");
}

// ---------------------------------------------------------------------------
// BlockFamily

BlockFamily::BlockFamily(Universe universe, std::vector<Block> blocks)
    : universe_(std::move(universe)), blocks_(std::move(blocks)) {
    std::unordered_set<std::string_view> names;
    for (const auto& block : blocks_) {
        if (block.name.empty() || !Universe::valid_label(block.name))
            throw PreconditionError("invalid block name '" + block.name + "'");
        if (!names.insert(block.name).second)
            throw PreconditionError("duplicate block name '" + block.name + "'");
        if (!block.members || block.members->size() != universe_.size())
            throw PreconditionError("block '" + block.name + "' does not match the universe size");
        if (block.members->none())
            throw PreconditionError("block '" + block.name + "' is empty");
    }
}

std::optional<std::size_t> BlockFamily::find_block(std::string_view name) const {
    for (std::size_t b = 0; b < blocks_.size(); ++b)
        if (blocks_[b].name == name)
            return b;
    return std::nullopt;
}

std::size_t BlockFamily::block_index(std::string_view name) const {
    if (const auto b = find_block(name))
        return *b;
    throw PreconditionError("unknown block '" + std::string(name) + "'");
}

ObjectSet BlockFamily::covered() const {
    ObjectSet out = universe_.empty_set();
    for (const auto& block : blocks_)
        out |= *block.members;
    return out;
}

CoverReport validate(const BlockFamily& family) {
    CoverReport report;
    report.uncovered = ~family.covered();
    report.is_covering = report.uncovered.none();
    return report;
}

// ---------------------------------------------------------------------------
// Text format

BlockFamily parse_family(std::string_view text) {
    std::optional<Universe> universe;
    std::vector<Block> blocks;
    std::unordered_set<std::string> block_names;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto eol = text.find('\n', pos);
        const auto raw = text.substr(pos, eol == std::string_view::npos ? text.npos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        const auto line = trim(strip_comment(raw));
        if (line.empty())
            continue;

        const auto colon = line.find(':');
        if (colon == std::string_view::npos)
            throw ParseError(line_no, "expected 'universe:' or 'block <name>:'");
        const auto head = split_whitespace(line.substr(0, colon));
        const auto tokens = split_whitespace(line.substr(colon + 1));

        if (head.size() == 1 && head[0] == "universe") {
            if (universe)
                throw ParseError(line_no, "universe declared twice");
            if (tokens.empty())
                throw ParseError(line_no, "empty universe", ParseErrorKind::EmptyUniverse);
            std::vector<std::string> labels;
            std::unordered_set<std::string_view> seen;
            for (const auto token : tokens) {
                if (!Universe::valid_label(token))
                    throw ParseError(line_no, "invalid object label '" + std::string(token) + "'");
                if (!seen.insert(token).second)
                    throw ParseError(line_no, "duplicate object label '" + std::string(token) + "'",
                                     ParseErrorKind::DuplicateLabel);
                labels.emplace_back(token);
            }
            universe.emplace(std::move(labels));
            continue;
        }

        if (head.size() != 2 || head[0] != "block")
            throw ParseError(line_no, "expected 'universe:' or 'block <name>:'");
        if (!universe)
            throw ParseError(line_no, "block declared before the universe line");

        const std::string name(head[1]);
        if (!Universe::valid_label(name))
            throw ParseError(line_no, "invalid block name '" + name + "'");
        if (!block_names.insert(name).second)
            throw ParseError(line_no, "duplicate block name '" + name + "'",
                             ParseErrorKind::DuplicateBlock);
        if (tokens.empty())
            throw ParseError(line_no, "block '" + name + "' is empty", ParseErrorKind::EmptyBlock);

        ObjectSet members = universe->empty_set();
        for (const auto token : tokens) {
            const auto index = universe->find(token);
            if (!index)
                throw ParseError(line_no, "unknown object '" + std::string(token) + "' in block '" +
                                              name + "'",
                                 ParseErrorKind::UnknownLabel);
            members.set(*index);
        }
        blocks.emplace_back(name, std::move(members));
    }

    if (!universe)
        throw ParseError(0, "missing 'universe:' line", ParseErrorKind::EmptyUniverse);
    return BlockFamily(std::move(*universe), std::move(blocks));
}

std::string serialize_family(const BlockFamily& family) {
    std::string out = "universe:";
    for (const auto& label : family.universe().labels())
        out += ' ' + label;
    out += '\n';
    for (const auto& block : family.blocks()) {
        out += "block " + block.name + ":";
        block.members->for_each_one(
            [&](std::size_t i) { out += ' ' + family.universe().label(i); });
        out += '\n';
    }
    return out;
}

ObjectSet parse_label_set(const Universe& universe, std::string_view text) {
    std::string normalized(text);
    for (auto& c : normalized)
        if (c == ',')
            c = ' ';
    ObjectSet out = universe.empty_set();
    for (const auto token : split_whitespace(normalized)) {
        const auto index = universe.find(token);
        if (!index)
            throw ParseError(0, "unknown object '" + std::string(token) + "'",
                             ParseErrorKind::UnknownLabel);
        out.set(*index);
    }
    return out;
}

std::string format_set(const Universe& universe, const ObjectSet& set) {
    std::string out;
    set.for_each_one([&](std::size_t i) {
        if (!out.empty())
            out += ' ';
        out += universe.label(i);
    });
    return out;
}

} // namespace covmat
