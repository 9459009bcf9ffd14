#pragma once

#include "covmat/charmat.hpp"

#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace covmat {

/// Add new blocks, given as member sets over the current universe.
struct AddBlocks {
    std::vector<std::pair<std::string, ObjectSet>> blocks;
};
/// Remove blocks by name.
struct DeleteBlocks {
    std::vector<std::string> names;
};
/// Add fresh objects; memberships[i] lists the existing blocks new object i joins.
struct AddObjects {
    std::vector<std::string> labels;
    std::vector<std::vector<std::string>> memberships;
};
/// Remove objects; blocks left empty are dropped.
struct DeleteObjects {
    std::vector<std::string> labels;
};
/// Move one object from one existing block to another.
struct MoveObject {
    std::string label;
    std::string from_block;
    std::string to_block;
};
/// Take one object out of a block and place it in a new singleton block.
struct IsolateObject {
    std::string label;
    std::string from_block;
    std::string new_block;
};

using Delta =
    std::variant<AddBlocks, DeleteBlocks, AddObjects, DeleteObjects, MoveObject, IsolateObject>;

/// Work counters filled in by the apply_* functions.
struct WorkStats {
    /// Pre-existing block vectors whose contents were read.
    std::size_t existing_block_reads = 0;
    /// Block vectors created or rewritten by the update.
    std::size_t block_vectors_written = 0;
    std::size_t gamma_rows = 0;
    std::size_t gamma_cols = 0;
    std::size_t pi_rows = 0;
    std::size_t pi_cols = 0;
};

// Every apply_* returns a new cache equal to build_cache() of the updated family
// and leaves its input untouched. Precondition failures throw PreconditionError
// before anything is built.

/// gamma' = gamma OR per-block gamma of each new block; pi' = pi AND per-block pi.
CharCache apply_ae(const CharCache& cache, const AddBlocks& delta, WorkStats* stats = nullptr);

/// Refolds the rows of objects that lost a block from the surviving vectors.
/// The result may be non-covering. At least one block must remain.
CharCache apply_de(const CharCache& cache, const DeleteBlocks& delta, WorkStats* stats = nullptr);

/// Keeps the old n x n blocks of gamma and pi, computes the new rows of gamma
/// (mirrored into columns) and the new rows and columns of pi. Every new object
/// must join at least one block.
CharCache apply_ao(const CharCache& cache, const AddObjects& delta, WorkStats* stats = nullptr);

/// Removes the rows and columns of the deleted objects. Blocks left empty are
/// dropped; at least one object and one block must remain.
CharCache apply_do(const CharCache& cache, const DeleteObjects& delta, WorkStats* stats = nullptr);

/// Recomputes row and column k of gamma and pi only. The source block must keep
/// at least one member.
CharCache apply_ca_move(const CharCache& cache, const MoveObject& delta, WorkStats* stats = nullptr);

/// Like apply_ca_move with a fresh singleton block as destination. If the
/// source block held only this object it is dropped.
CharCache apply_ca_isolate(const CharCache& cache, const IsolateObject& delta,
                           WorkStats* stats = nullptr);

CharCache apply_delta(const CharCache& cache, const Delta& delta, WorkStats* stats = nullptr);

/// The family that results from applying `delta`, without touching any matrix.
/// Used as the rebuild reference. Same preconditions as apply_delta().
BlockFamily apply_to_family(const BlockFamily& family, const Delta& delta);

// ---------------------------------------------------------------------------
// Delta scripts
//
//     add-block <name>: <labels...>
//     del-block <name>
//     add-object <label>: <block names...>
//     del-object <label>
//     move <label> <from> <to>
//     isolate <label> <from> <newname>

/// Parses one script line against the family it will be applied to. Returns
/// nullopt for blank and comment-only lines. Throws ParseError.
std::optional<Delta> parse_delta_line(const BlockFamily& family, std::string_view line);

/// Script lines reproducing `delta` when applied to `family` (one per block/object).
std::vector<std::string> format_delta(const BlockFamily& family, const Delta& delta);

struct ScriptResult {
    CharCache cache;
    /// Normalized script lines that were applied, in order.
    std::vector<std::string> applied;
};

/// Applies a script top to bottom. The first failing line aborts the whole
/// script: a ParseError or PreconditionError naming the line is thrown and no
/// partial result is returned.
ScriptResult apply_script(const CharCache& cache, std::string_view script);

} // namespace covmat
