#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ppspec {

/// Runs fn(i) for i in [0, n) on a small worker pool. Results must be
/// written to index-addressed storage so the outcome does not depend on
/// scheduling. The first exception thrown by any task is rethrown.
template <typename F>
void parallel_for(std::size_t n, F&& fn, std::size_t max_threads = 0) {
    std::size_t threads = max_threads != 0 ? max_threads
                                           : std::max<std::size_t>(1, std::thread::hardware_concurrency());
    threads = std::min(threads, n);
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) {
            fn(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (std::size_t t = 0; t < threads; ++t) {
            pool.emplace_back(worker);
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

} // namespace ppspec
