#include "covmat/parallel.hpp"

#include <atomic>

namespace covmat {

namespace {
std::atomic<std::size_t> g_thread_limit{0};
}

void set_thread_limit(std::size_t threads) noexcept {
    g_thread_limit.store(threads, std::memory_order_relaxed);
}

std::size_t thread_limit() noexcept {
    const auto limit = g_thread_limit.load(std::memory_order_relaxed);
    if (limit != 0)
        return limit;
    return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, const std::function<void(std::size_t, std::size_t)>& fn,
                  std::size_t min_chunk) {
    const std::size_t workers =
        std::min(thread_limit(), std::max<std::size_t>(1, count / std::max<std::size_t>(1, min_chunk)));
    if (workers <= 1) {
        fn(0, count);
        return;
    }
    const std::size_t chunk = (count + workers - 1) / workers;
    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    for (std::size_t w = 1; w < workers; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(count, begin + chunk);
        if (begin < end)
            pool.emplace_back([&fn, begin, end] { fn(begin, end); });
    }
    fn(0, std::min(count, chunk));
}

} // namespace covmat
