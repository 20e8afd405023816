#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <thread>
#include <vector>

namespace wold {

inline unsigned& worker_override() {
    static unsigned n = 0;
    return n;
}

// Worker count: --workers flag (via worker_override), else WOLD_WORKERS env,
// else hardware concurrency. Results never depend on this value; only wall
// time does (all reductions happen in fixed index order after the fill).
inline unsigned worker_count() {
    if (worker_override() > 0) return worker_override();
    if (const char* env = std::getenv("WOLD_WORKERS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? hc : 1;
}

namespace detail {
inline bool& inside_worker() {
    static thread_local bool flag = false;
    return flag;
}
} // namespace detail

// Runs fn(i) for i in [0, n). fn must only write to slots it owns.
// Calls from within a worker run serially (no nested thread pools).
template <class Fn>
void parallel_for(std::size_t n, Fn&& fn) {
    const unsigned workers = worker_count();
    if (n == 0) return;
    if (workers <= 1 || n == 1 || detail::inside_worker()) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::atomic<bool> failed{false};
    auto body = [&] {
        detail::inside_worker() = true;
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= n || failed.load(std::memory_order_relaxed)) return;
            try {
                fn(i);
            } catch (...) {
                if (!failed.exchange(true)) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    const unsigned spawn = static_cast<unsigned>(
        std::min<std::size_t>(workers, n));
    pool.reserve(spawn);
    for (unsigned t = 0; t < spawn; ++t) pool.emplace_back(body);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace wold
