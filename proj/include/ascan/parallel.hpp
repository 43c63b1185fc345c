#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace ascan {

inline std::size_t resolve_threads(std::size_t requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

// Split [0, n) into contiguous chunks, one per worker. fn(begin, end, worker)
// runs concurrently; workers must write only to their own slots so results
// stay independent of scheduling.
template <typename Fn>
void parallel_for(std::size_t n, std::size_t threads, Fn&& fn) {
    threads = resolve_threads(threads);
    if (threads <= 1 || n <= 1) {
        fn(static_cast<std::size_t>(0), n, static_cast<std::size_t>(0));
        return;
    }
    threads = std::min(threads, n);
    const std::size_t chunk = (n + threads - 1) / threads;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) {
        const std::size_t begin = t * chunk;
        const std::size_t end = std::min(n, begin + chunk);
        pool.emplace_back([&fn, begin, end, t] { fn(begin, end, t); });
    }
    for (std::thread& th : pool) th.join();
}

}  // namespace ascan
