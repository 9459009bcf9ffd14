#pragma once

#include "covmat/bitvector.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace covmat {

/// Characteristic vector of a subset of the universe, indexed in universe order.
using ObjectSet = BitVector;

/// Ordered, labeled finite object set. Cheap to copy: the label table is shared
/// and never mutated after construction.
class Universe {
public:
    /// Labels must be non-empty, unique, and free of whitespace and the
    /// characters `#`, `:` and `,`. Throws PreconditionError otherwise.
    explicit Universe(std::vector<std::string> labels);

    std::size_t size() const noexcept { return data_->labels.size(); }
    const std::vector<std::string>& labels() const noexcept { return data_->labels; }
    const std::string& label(std::size_t index) const { return data_->labels.at(index); }

    std::optional<std::size_t> find(std::string_view label) const;
    /// Throws PreconditionError for an unknown label.
    std::size_t index(std::string_view label) const;

    ObjectSet empty_set() const { return ObjectSet(size()); }
    ObjectSet full_set() const { return ObjectSet(size(), true); }

    friend bool operator==(const Universe& a, const Universe& b) {
        return a.data_ == b.data_ || a.data_->labels == b.data_->labels;
    }

    static bool valid_label(std::string_view label) noexcept;

private:
    struct Data {
        std::vector<std::string> labels;
        std::unordered_map<std::string, std::size_t> index;
    };
    std::shared_ptr<const Data> data_;
};

/// A named block. Member vectors are immutable and shared between successive
/// families produced by incremental updates.
struct Block {
    std::string name;
    std::shared_ptr<const ObjectSet> members;

    Block(std::string block_name, ObjectSet block_members)
        : name(std::move(block_name)),
          members(std::make_shared<const ObjectSet>(std::move(block_members))) {}
    Block(std::string block_name, std::shared_ptr<const ObjectSet> block_members)
        : name(std::move(block_name)), members(std::move(block_members)) {}

    friend bool operator==(const Block& a, const Block& b) {
        return a.name == b.name && *a.members == *b.members;
    }
};

struct CoverReport {
    bool is_covering = false;
    ObjectSet uncovered;
};

/// Ordered sequence of named, non-empty blocks over a universe. The union of the
/// blocks need not be the whole universe; such a family is legal but flagged
/// non-covering.
class BlockFamily {
public:
    /// Throws PreconditionError on duplicate names, empty blocks, or member
    /// vectors whose length differs from the universe size.
    BlockFamily(Universe universe, std::vector<Block> blocks);

    const Universe& universe() const noexcept { return universe_; }
    const std::vector<Block>& blocks() const noexcept { return blocks_; }
    std::size_t block_count() const noexcept { return blocks_.size(); }
    std::size_t object_count() const noexcept { return universe_.size(); }

    const ObjectSet& members(std::size_t block) const { return *blocks_.at(block).members; }
    std::optional<std::size_t> find_block(std::string_view name) const;
    /// Throws PreconditionError for an unknown block name.
    std::size_t block_index(std::string_view name) const;

    /// Union of all blocks.
    ObjectSet covered() const;
    bool is_covering() const { return covered().all(); }

    friend bool operator==(const BlockFamily& a, const BlockFamily& b) {
        return a.universe_ == b.universe_ && a.blocks_ == b.blocks_;
    }

private:
    Universe universe_;
    std::vector<Block> blocks_;
};

CoverReport validate(const BlockFamily& family);

/// Parses the line-oriented covering format:
///
///     universe: x1 x2 x3 x4
///     block C1: x1 x4      # comment
///
/// Repeated members inside one block collapse. Throws ParseError.
BlockFamily parse_family(std::string_view text);
std::string serialize_family(const BlockFamily& family);

/// Comma- or whitespace-separated labels. Throws ParseError for unknown labels.
ObjectSet parse_label_set(const Universe& universe, std::string_view text);
/// Labels of the set in universe order, separated by single spaces.
std::string format_set(const Universe& universe, const ObjectSet& set);

std::vector<std::string_view> split_whitespace(std::string_view text);
std::string_view trim(std::string_view text);

} // namespace covmat
