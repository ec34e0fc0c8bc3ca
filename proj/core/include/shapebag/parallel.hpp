#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace shapebag {

inline int resolve_threads(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

/// Runs fn(i) for i in [0, n) across up to `threads` workers (0 = auto).
/// Workers own contiguous index blocks, so writes to per-index slots are
/// race-free and results never depend on the thread count.
inline void parallel_for(size_t n, int threads, const std::function<void(size_t)>& fn) {
    const int workers = std::min<int>(resolve_threads(threads), n > 0 ? static_cast<int>(n) : 1);
    if (workers <= 1 || n < 2) {
        for (size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(static_cast<size_t>(workers));
    const size_t chunk = (n + static_cast<size_t>(workers) - 1) / static_cast<size_t>(workers);
    for (int w = 0; w < workers; ++w) {
        const size_t begin = static_cast<size_t>(w) * chunk;
        const size_t end = std::min(n, begin + chunk);
        pool.emplace_back([&, w, begin, end] {
            try {
                for (size_t i = begin; i < end; ++i) fn(i);
            } catch (...) {
                errors[static_cast<size_t>(w)] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace shapebag
