#ifndef ROADGRAPH_PARALLEL_HPP
#define ROADGRAPH_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace roadgraph {

namespace detail {
inline std::atomic<int>& thread_cap_storage() {
    static std::atomic<int> cap{0}; // 0 = unset
    return cap;
}
} // namespace detail

/// Cap worker parallelism. 0 restores the default (hardware concurrency,
/// or the ROADGRAPH_THREADS environment variable when set).
inline void set_max_threads(int n) { detail::thread_cap_storage().store(n); }

inline int max_threads() {
    int cap = detail::thread_cap_storage().load();
    if (cap <= 0) {
        if (const char* env = std::getenv("ROADGRAPH_THREADS"))
            cap = std::atoi(env);
    }
    if (cap <= 0) cap = static_cast<int>(std::thread::hardware_concurrency());
    return std::max(1, cap);
}

/// Run fn(begin, end) over a static block partition of [0, n).
/// Blocks are disjoint, so results never depend on the worker count as long
/// as fn writes only to its own index range.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
    const std::size_t workers =
        std::min<std::size_t>(static_cast<std::size_t>(max_threads()), std::max<std::size_t>(n, 1));
    if (workers <= 1 || n < 2) {
        fn(std::size_t{0}, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&fn, lo, hi] { fn(lo, hi); });
    }
    for (auto& t : pool) t.join();
}

} // namespace roadgraph

#endif
