// parallel.hpp — deterministic replica distribution across worker threads
#pragma once

#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace thermo {

// Runs fn(0) .. fn(count - 1) across the given number of workers. Callers
// derive per-index RNG streams and write to per-index slots, so the outcome
// is independent of scheduling.
inline void parallel_for_indexed(long count, int workers, const std::function<void(long)>& fn) {
    if (workers <= 1 || count <= 1) {
        for (long i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<long> next{0};
    const int pool_size = static_cast<int>(std::min<long>(workers, count));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(pool_size));
    for (int w = 0; w < pool_size; ++w) {
        pool.emplace_back([&] {
            for (long i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace thermo
