#include "covmat/dynamic.hpp"

#include "covmat/error.hpp"

#include <algorithm>
#include <unordered_set>

namespace covmat {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require(bool condition, const std::string& message) {
    if (!condition)
        throw PreconditionError(message);
}

void require_fresh_block_name(const BlockFamily& family, const std::string& name,
                              std::unordered_set<std::string>& pending) {
    require(Universe::valid_label(name), "invalid block name '" + name + "'");
    require(!family.find_block(name), "block '" + name + "' already exists");
    require(pending.insert(name).second, "block '" + name + "' named twice");
}

WorkStats& sink(WorkStats* stats) {
    thread_local WorkStats discard;
    if (stats)
        return *stats;
    discard = {};
    return discard;
}

// ---------------------------------------------------------------------------
// Family edits. Each validates the delta and produces the updated family.

BlockFamily edit_ae(const BlockFamily& family, const AddBlocks& delta) {
    require(!delta.blocks.empty(), "add-block: no blocks given");
    std::unordered_set<std::string> pending;
    std::vector<Block> blocks = family.blocks();
    for (const auto& [name, members] : delta.blocks) {
        require_fresh_block_name(family, name, pending);
        require(members.size() == family.object_count(),
                "block '" + name + "' does not match the universe size");
        require(members.any(), "block '" + name + "' is empty");
        blocks.emplace_back(name, members);
    }
    return BlockFamily(family.universe(), std::move(blocks));
}

struct DeEdit {
    BlockFamily family;
    ObjectSet touched;  // objects that belonged to a deleted block
};

DeEdit edit_de(const BlockFamily& family, const DeleteBlocks& delta) {
    require(!delta.names.empty(), "del-block: no blocks given");
    std::vector<bool> removed(family.block_count(), false);
    for (const auto& name : delta.names) {
        const auto b = family.block_index(name);
        require(!removed[b], "block '" + name + "' named twice");
        removed[b] = true;
    }
    std::vector<Block> blocks;
    ObjectSet touched = family.universe().empty_set();
    for (std::size_t b = 0; b < family.block_count(); ++b) {
        if (removed[b])
            touched |= family.members(b);
        else
            blocks.push_back(family.blocks()[b]);
    }
    require(!blocks.empty(), "del-block: cannot delete every block");
    return {BlockFamily(family.universe(), std::move(blocks)), std::move(touched)};
}

BlockFamily edit_ao(const BlockFamily& family, const AddObjects& delta) {
    require(!delta.labels.empty(), "add-object: no objects given");
    require(delta.labels.size() == delta.memberships.size(),
            "add-object: one membership list per object required");
    const Universe& u = family.universe();
    const std::size_t n = u.size();
    const std::size_t total = n + delta.labels.size();

    std::vector<std::string> labels = u.labels();
    std::unordered_set<std::string> fresh;
    for (const auto& label : delta.labels) {
        require(Universe::valid_label(label), "invalid object label '" + label + "'");
        require(!u.find(label), "object '" + label + "' already exists");
        require(fresh.insert(label).second, "object '" + label + "' named twice");
        labels.push_back(label);
    }

    std::vector<std::vector<std::size_t>> joins(family.block_count());
    for (std::size_t r = 0; r < delta.labels.size(); ++r) {
        require(!delta.memberships[r].empty(),
                "object '" + delta.labels[r] + "' must join at least one block");
        for (const auto& name : delta.memberships[r])
            joins[family.block_index(name)].push_back(n + r);
    }

    std::vector<Block> blocks;
    blocks.reserve(family.block_count());
    for (std::size_t b = 0; b < family.block_count(); ++b) {
        ObjectSet members = family.members(b);
        members.resize(total);
        for (const auto i : joins[b])
            members.set(i);
        blocks.emplace_back(family.blocks()[b].name, std::move(members));
    }
    return BlockFamily(Universe(std::move(labels)), std::move(blocks));
}

struct DoEdit {
    BlockFamily family;
    std::vector<std::size_t> kept;  // surviving old indices, ascending
    bool dropped_blocks = false;
};

DoEdit edit_do(const BlockFamily& family, const DeleteObjects& delta) {
    require(!delta.labels.empty(), "del-object: no objects given");
    const Universe& u = family.universe();
    ObjectSet removed = u.empty_set();
    for (const auto& label : delta.labels) {
        const auto i = u.index(label);
        require(!removed.test(i), "object '" + label + "' named twice");
        removed.set(i);
    }
    require(removed.count() < u.size(), "del-object: cannot delete the whole universe");

    std::vector<std::size_t> kept;
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (!removed.test(i)) {
            kept.push_back(i);
            labels.push_back(u.label(i));
        }
    }

    std::vector<Block> blocks;
    bool dropped = false;
    for (const auto& block : family.blocks()) {
        ObjectSet members = block.members->select(kept);
        if (members.none()) {
            dropped = true;
            continue;
        }
        blocks.emplace_back(block.name, std::move(members));
    }
    require(!blocks.empty(), "del-object: no block would survive");
    return {BlockFamily(Universe(std::move(labels)), std::move(blocks)), std::move(kept), dropped};
}

struct CaEdit {
    BlockFamily family;
    std::size_t object;
};

CaEdit edit_move(const BlockFamily& family, const MoveObject& delta) {
    const std::size_t k = family.universe().index(delta.label);
    const std::size_t from = family.block_index(delta.from_block);
    const std::size_t to = family.block_index(delta.to_block);
    require(from != to, "move: source and destination are the same block");
    require(family.members(from).test(k),
            "object '" + delta.label + "' is not in block '" + delta.from_block + "'");
    require(!family.members(to).test(k),
            "object '" + delta.label + "' is already in block '" + delta.to_block + "'");
    require(family.members(from).count() > 1,
            "move would leave block '" + delta.from_block + "' empty");

    std::vector<Block> blocks = family.blocks();
    ObjectSet source = family.members(from);
    source.reset(k);
    ObjectSet target = family.members(to);
    target.set(k);
    blocks[from] = Block(blocks[from].name, std::move(source));
    blocks[to] = Block(blocks[to].name, std::move(target));
    return {BlockFamily(family.universe(), std::move(blocks)), k};
}

CaEdit edit_isolate(const BlockFamily& family, const IsolateObject& delta) {
    const std::size_t k = family.universe().index(delta.label);
    const std::size_t from = family.block_index(delta.from_block);
    std::unordered_set<std::string> pending;
    require_fresh_block_name(family, delta.new_block, pending);
    require(family.members(from).test(k),
            "object '" + delta.label + "' is not in block '" + delta.from_block + "'");

    std::vector<Block> blocks;
    blocks.reserve(family.block_count() + 1);
    for (std::size_t b = 0; b < family.block_count(); ++b) {
        if (b != from) {
            blocks.push_back(family.blocks()[b]);
            continue;
        }
        ObjectSet source = family.members(from);
        source.reset(k);
        if (source.any())
            blocks.emplace_back(family.blocks()[b].name, std::move(source));
    }
    ObjectSet single = family.universe().empty_set();
    single.set(k);
    blocks.emplace_back(delta.new_block, std::move(single));
    return {BlockFamily(family.universe(), std::move(blocks)), k};
}

// Rewrites row and column k of both matrices for `family`.
void refresh_row_and_column(const BlockFamily& family, std::size_t k, BoolMatrix& gamma,
                            TritMatrix& pi, WorkStats& stats) {
    const std::size_t n = family.object_count();
    const ObjectSet covered = family.covered();
    const ObjectSet core = blocks_core(family);

    BitVector grow = gamma_row(family, k);
    for (std::size_t i = 0; i < n; ++i)
        gamma.set(i, k, grow.test(i));
    gamma.row(k) = std::move(grow);
    ++stats.gamma_rows;
    ++stats.gamma_cols;

    auto col = pi_column(family, k, covered, core);
    for (std::size_t i = 0; i < n; ++i)
        pi.set(i, k, static_cast<std::uint8_t>(col.ge1.test(i) + col.ge2.test(i)));
    auto row = pi_row(family, k, core);
    pi.set_row(k, std::move(row.ge1), std::move(row.ge2));
    ++stats.pi_rows;
    ++stats.pi_cols;
}

// An uncovered object's pi row is 1 + core; refresh those rows after the core moved.
void refresh_uncovered_rows(const BlockFamily& family, TritMatrix& pi, WorkStats& stats) {
    const ObjectSet uncovered = ~family.covered();
    if (uncovered.none())
        return;
    const ObjectSet core = blocks_core(family);
    const BitVector ones(family.object_count(), true);
    uncovered.for_each_one([&](std::size_t i) {
        pi.set_row(i, ones, core);
        ++stats.pi_rows;
    });
}

} // namespace

// ---------------------------------------------------------------------------
// Incremental updates

CharCache apply_ae(const CharCache& cache, const AddBlocks& delta, WorkStats* stats) {
    auto& work = sink(stats);
    BlockFamily family = edit_ae(cache.family(), delta);

    BoolMatrix gamma = cache.gamma();
    TritMatrix pi = cache.pi();
    const std::size_t n = cache.object_count();
    for (const auto& [name, d] : delta.blocks) {
        ++work.block_vectors_written;
        // Join with the block's gamma: member rows gain d.
        d.for_each_one([&](std::size_t i) { gamma.row(i) |= d; });
        // Meet with the block's pi: member rows meet d, non-member rows meet d + 1.
        for (std::size_t i = 0; i < n; ++i) {
            if (d.test(i)) {
                pi.set_row(i, pi.ge1_row(i) & d, BitVector(n));
                ++work.pi_rows;
            } else if (pi.ge2_row(i).any()) {
                pi.set_row(i, pi.ge1_row(i), pi.ge2_row(i) & d);
                ++work.pi_rows;
            }
        }
        work.gamma_rows += d.count();
    }
    return CharCache::from_parts(std::move(family), std::move(gamma), std::move(pi));
}

CharCache apply_de(const CharCache& cache, const DeleteBlocks& delta, WorkStats* stats) {
    auto& work = sink(stats);
    auto [family, touched] = edit_de(cache.family(), delta);

    BoolMatrix gamma = cache.gamma();
    TritMatrix pi = cache.pi();
    const ObjectSet core = blocks_core(family);
    work.existing_block_reads += family.block_count();

    // Only rows of objects that lost a block can change, plus the rows of
    // uncovered objects whenever the core grew.
    ObjectSet rows = std::move(touched);
    if (core != blocks_core(cache.family()))
        rows |= ~family.covered();
    rows.for_each_one([&](std::size_t i) {
        gamma.row(i) = gamma_row(family, i);
        auto r = pi_row(family, i, core);
        pi.set_row(i, std::move(r.ge1), std::move(r.ge2));
        ++work.gamma_rows;
        ++work.pi_rows;
    });
    return CharCache::from_parts(std::move(family), std::move(gamma), std::move(pi));
}

CharCache apply_ao(const CharCache& cache, const AddObjects& delta, WorkStats* stats) {
    auto& work = sink(stats);
    BlockFamily family = edit_ao(cache.family(), delta);
    const std::size_t n = cache.object_count();
    const std::size_t total = family.object_count();
    work.block_vectors_written += family.block_count();

    // Old n x n blocks are copied verbatim; new rows are filled in below.
    auto widen = [total](const BitVector& v) {
        BitVector out(total);
        std::copy(v.words().begin(), v.words().end(), out.words().begin());
        return out;
    };
    std::vector<BitVector> grows, p1, p2;
    grows.reserve(total);
    p1.reserve(total);
    p2.reserve(total);
    for (std::size_t i = 0; i < n; ++i) {
        grows.push_back(widen(cache.gamma().row(i)));
        p1.push_back(widen(cache.pi().ge1_row(i)));
        p2.push_back(widen(cache.pi().ge2_row(i)));
    }
    grows.resize(total, BitVector(total));
    p1.resize(total, BitVector(total));
    p2.resize(total, BitVector(total));
    BoolMatrix gamma = BoolMatrix::from_bit_rows(std::move(grows), total);
    TritMatrix pi = TritMatrix::from_planes(std::move(p1), std::move(p2), total);

    const ObjectSet covered = family.covered();
    const ObjectSet core = blocks_core(family);
    for (std::size_t j = n; j < total; ++j) {
        // New gamma row, mirrored into the column.
        BitVector grow = gamma_row(family, j);
        for (std::size_t i = 0; i < n; ++i)
            if (grow.test(i))
                gamma.set(i, j);
        gamma.row(j) = std::move(grow);
        ++work.gamma_rows;

        // New pi row over all columns.
        auto row = pi_row(family, j, core);
        pi.set_row(j, std::move(row.ge1), std::move(row.ge2));
        ++work.pi_rows;

        // New pi column over the old rows.
        auto col = pi_column(family, j, covered, core);
        for (std::size_t i = 0; i < n; ++i)
            pi.set(i, j, static_cast<std::uint8_t>(col.ge1.test(i) + col.ge2.test(i)));
        ++work.pi_cols;
    }
    return CharCache::from_parts(std::move(family), std::move(gamma), std::move(pi));
}

CharCache apply_do(const CharCache& cache, const DeleteObjects& delta, WorkStats* stats) {
    auto& work = sink(stats);
    auto [family, kept, dropped] = edit_do(cache.family(), delta);
    const std::size_t total = kept.size();
    work.block_vectors_written += family.block_count();

    std::vector<BitVector> grows, p1, p2;
    grows.reserve(total);
    p1.reserve(total);
    p2.reserve(total);
    const BitSelection selection(kept);
    for (const std::size_t i : kept) {
        grows.push_back(cache.gamma().row(i).select(selection));
        p1.push_back(cache.pi().ge1_row(i).select(selection));
        p2.push_back(cache.pi().ge2_row(i).select(selection));
    }
    BoolMatrix gamma = BoolMatrix::from_bit_rows(std::move(grows), total);
    TritMatrix pi = TritMatrix::from_planes(std::move(p1), std::move(p2), total);
    if (dropped)
        refresh_uncovered_rows(family, pi, work);
    return CharCache::from_parts(std::move(family), std::move(gamma), std::move(pi));
}

CharCache apply_ca_move(const CharCache& cache, const MoveObject& delta, WorkStats* stats) {
    auto& work = sink(stats);
    auto [family, k] = edit_move(cache.family(), delta);
    work.block_vectors_written += 2;
    BoolMatrix gamma = cache.gamma();
    TritMatrix pi = cache.pi();
    refresh_row_and_column(family, k, gamma, pi, work);
    return CharCache::from_parts(std::move(family), std::move(gamma), std::move(pi));
}

CharCache apply_ca_isolate(const CharCache& cache, const IsolateObject& delta, WorkStats* stats) {
    auto& work = sink(stats);
    auto [family, k] = edit_isolate(cache.family(), delta);
    work.block_vectors_written += 2;
    BoolMatrix gamma = cache.gamma();
    TritMatrix pi = cache.pi();
    // The new singleton shrinks the core, which moves every uncovered row.
    refresh_uncovered_rows(family, pi, work);
    refresh_row_and_column(family, k, gamma, pi, work);
    return CharCache::from_parts(std::move(family), std::move(gamma), std::move(pi));
}

CharCache apply_delta(const CharCache& cache, const Delta& delta, WorkStats* stats) {
    return std::visit(
        Overloaded{
            [&](const AddBlocks& d) { return apply_ae(cache, d, stats); },
            [&](const DeleteBlocks& d) { return apply_de(cache, d, stats); },
            [&](const AddObjects& d) { return apply_ao(cache, d, stats); },
            [&](const DeleteObjects& d) { return apply_do(cache, d, stats); },
            [&](const MoveObject& d) { return apply_ca_move(cache, d, stats); },
            [&](const IsolateObject& d) { return apply_ca_isolate(cache, d, stats); },
        },
        delta);
}

BlockFamily apply_to_family(const BlockFamily& family, const Delta& delta) {
    return std::visit(Overloaded{
                          [&](const AddBlocks& d) { return edit_ae(family, d); },
                          [&](const DeleteBlocks& d) { return edit_de(family, d).family; },
                          [&](const AddObjects& d) { return edit_ao(family, d); },
                          [&](const DeleteObjects& d) { return edit_do(family, d).family; },
                          [&](const MoveObject& d) { return edit_move(family, d).family; },
                          [&](const IsolateObject& d) { return edit_isolate(family, d).family; },
                      },
                      delta);
}

// ---------------------------------------------------------------------------
// Scripts

namespace {

std::vector<std::string> to_strings(const std::vector<std::string_view>& views) {
    return {views.begin(), views.end()};
}

} // namespace

std::optional<Delta> parse_delta_line(const BlockFamily& family, std::string_view line) {
    if (const auto hash = line.find('#'); hash != std::string_view::npos)
        line = line.substr(0, hash);
    line = trim(line);
    if (line.empty())
        return std::nullopt;

    // "<verb> <head>: <tail...>" or "<verb> <args...>"
    std::string_view head = line;
    std::string_view tail;
    bool has_colon = false;
    if (const auto colon = line.find(':'); colon != std::string_view::npos) {
        head = line.substr(0, colon);
        tail = line.substr(colon + 1);
        has_colon = true;
    }
    const auto words = split_whitespace(head);
    const auto rest = split_whitespace(tail);
    if (words.empty())
        throw ParseError(0, "missing command");
    const std::string_view verb = words[0];

    auto expect = [&](bool ok, const char* usage) {
        if (!ok)
            throw ParseError(0, std::string("expected '") + usage + "'");
    };

    if (verb == "add-block") {
        expect(has_colon && words.size() == 2, "add-block <name>: <labels...>");
        if (rest.empty())
            throw ParseError(0, "block '" + std::string(words[1]) + "' is empty",
                             ParseErrorKind::EmptyBlock);
        ObjectSet members = family.universe().empty_set();
        for (const auto label : rest) {
            const auto i = family.universe().find(label);
            if (!i)
                throw ParseError(0, "unknown object '" + std::string(label) + "'",
                                 ParseErrorKind::UnknownLabel);
            members.set(*i);
        }
        return AddBlocks{{{std::string(words[1]), std::move(members)}}};
    }
    if (verb == "del-block") {
        expect(!has_colon && words.size() == 2, "del-block <name>");
        return DeleteBlocks{{std::string(words[1])}};
    }
    if (verb == "add-object") {
        expect(has_colon && words.size() == 2, "add-object <label>: <block names...>");
        return AddObjects{{std::string(words[1])}, {to_strings(rest)}};
    }
    if (verb == "del-object") {
        expect(!has_colon && words.size() == 2, "del-object <label>");
        return DeleteObjects{{std::string(words[1])}};
    }
    if (verb == "move") {
        expect(!has_colon && words.size() == 4, "move <label> <from> <to>");
        return MoveObject{std::string(words[1]), std::string(words[2]), std::string(words[3])};
    }
    if (verb == "isolate") {
        expect(!has_colon && words.size() == 4, "isolate <label> <from> <newname>");
        return IsolateObject{std::string(words[1]), std::string(words[2]), std::string(words[3])};
    }
    throw ParseError(0, "unknown command '" + std::string(verb) + "'");
}

std::vector<std::string> format_delta(const BlockFamily& family, const Delta& delta) {
    std::vector<std::string> out;
    auto join = [](const std::vector<std::string>& items) {
        std::string s;
        for (const auto& item : items)
            s += ' ' + item;
        return s;
    };
    std::visit(Overloaded{
                   [&](const AddBlocks& d) {
                       for (const auto& [name, members] : d.blocks) {
                           const auto labels = format_set(family.universe(), members);
                           out.push_back("add-block " + name + ":" +
                                         (labels.empty() ? "" : " " + labels));
                       }
                   },
                   [&](const DeleteBlocks& d) {
                       for (const auto& name : d.names)
                           out.push_back("del-block " + name);
                   },
                   [&](const AddObjects& d) {
                       for (std::size_t r = 0; r < d.labels.size(); ++r)
                           out.push_back("add-object " + d.labels[r] + ":" +
                                         join(d.memberships.at(r)));
                   },
                   [&](const DeleteObjects& d) {
                       for (const auto& label : d.labels)
                           out.push_back("del-object " + label);
                   },
                   [&](const MoveObject& d) {
                       out.push_back("move " + d.label + " " + d.from_block + " " + d.to_block);
                   },
                   [&](const IsolateObject& d) {
                       out.push_back("isolate " + d.label + " " + d.from_block + " " + d.new_block);
                   },
               },
               delta);
    return out;
}

ScriptResult apply_script(const CharCache& cache, std::string_view script) {
    ScriptResult result{cache, {}};
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < script.size()) {
        const auto eol = script.find('\n', pos);
        const auto line =
            script.substr(pos, eol == std::string_view::npos ? script.npos : eol - pos);
        pos = eol == std::string_view::npos ? script.size() : eol + 1;
        ++line_no;
        try {
            const auto delta = parse_delta_line(result.cache.family(), line);
            if (!delta)
                continue;
            auto lines = format_delta(result.cache.family(), *delta);
            result.cache = apply_delta(result.cache, *delta);
            for (auto& l : lines)
                result.applied.push_back(std::move(l));
        } catch (const ParseError& e) {
            throw ParseError(line_no, e.what(), e.kind());
        } catch (const PreconditionError& e) {
            throw PreconditionError("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return result;
}

} // namespace covmat
