#pragma once

#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace g2gaps {

// Runs fn(i) for i in [0, n) on up to `threads` workers (0 = hardware
// concurrency). Work items are claimed atomically; callers that need
// deterministic output collect per-index results and merge in index order.
inline void parallel_for_index(std::size_t n, const std::function<void(std::size_t)>& fn,
                               int threads = 0) {
    if (n == 0) return;
    unsigned hw = std::thread::hardware_concurrency();
    std::size_t nt = threads > 0 ? static_cast<std::size_t>(threads) : (hw ? hw : 1);
    nt = std::min(nt, n);
    if (nt <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr err;
    std::atomic<bool> failed{false};
    for (std::size_t t = 0; t < nt; ++t) {
        pool.emplace_back([&] {
            while (true) {
                std::size_t i = next.fetch_add(1);
                if (i >= n || failed.load()) break;
                try {
                    fn(i);
                } catch (...) {
                    if (!failed.exchange(true)) err = std::current_exception();
                    break;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (failed.load() && err) std::rethrow_exception(err);
}

} // namespace g2gaps
