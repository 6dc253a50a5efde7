// parallel.hpp — Index-pulling parallel loop for independent tasks
#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace liouspec {

inline int hardware_workers() {
    const unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : int(n);
}

// Runs body(i) for every i in [0, count). workers <= 0 means one per core.
// Indices are handed out through a shared counter and bodies must write only
// to their own output slot, so results do not depend on the worker count.
// The first exception thrown by a body is rethrown after all workers join.
inline void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body,
                         int workers = 0) {
    if (count == 0) return;
    int n = workers <= 0 ? hardware_workers() : workers;
    if (std::size_t(n) > count) n = int(count);
    if (n <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr error;
    auto drain = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                body(i);
            } catch (...) {
                const std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(std::size_t(n));
    for (int t = 0; t < n; ++t) pool.emplace_back(drain);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace liouspec
