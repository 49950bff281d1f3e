#pragma once

#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace cr {

inline unsigned& default_thread_count() {
    static unsigned n = std::max(1u, std::thread::hardware_concurrency());
    return n;
}

// Splits [0, n) into one contiguous chunk per worker and runs
// body(begin, end, worker_id) on each. Workers must write only to
// worker-private state; callers combine partials in worker order so
// results do not depend on scheduling.
inline void parallel_chunks(std::int64_t n,
                            const std::function<void(std::int64_t, std::int64_t, unsigned)>& body,
                            unsigned nthreads = 0) {
    if (nthreads == 0) nthreads = default_thread_count();
    if (n <= 0) return;
    const unsigned workers = static_cast<unsigned>(
        std::min<std::int64_t>(n, static_cast<std::int64_t>(nthreads)));
    if (workers <= 1) {
        body(0, n, 0);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::int64_t chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::int64_t b = static_cast<std::int64_t>(w) * chunk;
        const std::int64_t e = std::min<std::int64_t>(n, b + chunk);
        if (b >= e) break;
        pool.emplace_back([&body, b, e, w] { body(b, e, w); });
    }
    for (auto& t : pool) t.join();
}

}  // namespace cr
