#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace covmat {

/// Process-wide cap on worker threads used by row-parallel kernels. 0 means
/// "use hardware concurrency".
void set_thread_limit(std::size_t threads) noexcept;
std::size_t thread_limit() noexcept;

/// Calls fn(begin, end) over disjoint chunks of [0, count). Runs inline when
/// the work is small or the thread limit is 1.
void parallel_for(std::size_t count, const std::function<void(std::size_t, std::size_t)>& fn,
                  std::size_t min_chunk = 256);

} // namespace covmat
