#pragma once

#include "covmat/charmat.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace covmat {

/// A cache together with how it was reached: the family it was first built
/// from and the delta-script lines applied since.
struct SessionState {
    BlockFamily origin;
    std::vector<std::string> history;
    CharCache cache;
    std::string source;  // path of the covering file, informational
};

SessionState new_session(const BlockFamily& family, std::string source = {});

/// 64-bit FNV-1a over the matrix dumps of gamma and pi, as 16 hex digits.
std::string cache_digest(const CharCache& cache);

/// Versioned JSON. Only families are stored; gamma and pi are rebuilt on load
/// and checked against the stored digest.
std::string save_state(const SessionState& state);

/// Throws ParseError for malformed JSON or schema violations and
/// InvariantError when the rebuilt matrices do not match the stored digest.
SessionState load_state(std::string_view text);

/// Rebuilds the origin and re-applies the history.
CharCache replay(const SessionState& state);

} // namespace covmat
