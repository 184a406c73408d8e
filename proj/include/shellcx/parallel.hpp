#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <functional>
#include <limits>
#include <thread>
#include <vector>

namespace shellcx {

/**
 * Smallest i in [0, n) with pred(i), evaluated by `jobs` workers.
 * The answer does not depend on the worker count. Returns n if none.
 */
inline std::size_t parallel_find_first(std::size_t n, int jobs, const std::function<bool(std::size_t)>& pred)
{
    if (jobs <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i)
            if (pred(i)) return i;
        return n;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> best{n};
    auto work = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n || i >= best.load()) return;
            if (pred(i)) {
                std::size_t cur = best.load();
                while (i < cur && !best.compare_exchange_weak(cur, i)) {
                }
            }
        }
    };
    std::vector<std::thread> pool;
    const int w = std::min<std::size_t>(static_cast<std::size_t>(jobs), n);
    for (int t = 0; t < w; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
    return best.load();
}

/// Runs body(i) for every i in [0, n) on `jobs` workers.
inline void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& body)
{
    parallel_find_first(n, jobs, [&](std::size_t i) {
        body(i);
        return false;
    });
}

}  // namespace shellcx
