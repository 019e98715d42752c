#ifndef SLE_PARALLEL_HPP
#define SLE_PARALLEL_HPP

#include <cstddef>
#include <thread>
#include <vector>

namespace sle {

/// Runs body(i) for i in [0, n) on the given number of threads.  Units are
/// distributed in contiguous blocks.  Callers keep per-unit outputs in
/// preallocated slots and reduce serially in index order afterwards, so
/// results never depend on the thread count.
template <class F>
void parallel_for(std::size_t n, int threads, F&& body) {
    if (threads <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    const auto nt = static_cast<std::size_t>(threads) < n ? static_cast<std::size_t>(threads) : n;
    std::vector<std::thread> pool;
    pool.reserve(nt);
    for (std::size_t t = 0; t < nt; ++t) {
        const std::size_t lo = n * t / nt;
        const std::size_t hi = n * (t + 1) / nt;
        pool.emplace_back([lo, hi, &body] {
            for (std::size_t i = lo; i < hi; ++i) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

} // namespace sle

#endif
