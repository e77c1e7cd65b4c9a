#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace sketchtest {

/// Runs fn(0..count-1) across up to `jobs` threads. Tasks must be independent
/// given derived seeds; the first exception is rethrown after all workers
/// join.
inline void parallel_for(std::int64_t count, int jobs,
                         const std::function<void(std::int64_t)>& fn) {
    if (count <= 0) return;
    const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(count)));
    if (workers == 1) {
        for (std::int64_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::int64_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        threads.emplace_back([&] {
            while (!failed.load(std::memory_order_relaxed)) {
                const std::int64_t i = next.fetch_add(1, std::memory_order_relaxed);
                if (i >= count) break;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                    failed.store(true, std::memory_order_relaxed);
                }
            }
        });
    }
    for (auto& t : threads) t.join();
    if (error) std::rethrow_exception(error);
}

inline int default_jobs() {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

} // namespace sketchtest
