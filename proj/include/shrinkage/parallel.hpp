#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

// Deterministic work distribution: each index writes only its own slot, so
// results are identical for any worker count; reductions happen afterwards in
// index order. SHRINKAGE_WORKERS overrides the worker count (wall time only,
// never values).

namespace shrinkage {

inline int resolve_worker_count(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("SHRINKAGE_WORKERS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
}

template <class F>
void parallel_for(std::size_t count, int workers, F&& body) {
    workers = resolve_worker_count(workers);
    if (workers <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr err;
    std::mutex err_mu;
    auto run = [&] {
        while (!failed.load(std::memory_order_relaxed)) {
            std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= count) break;
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> g(err_mu);
                if (!err) err = std::current_exception();
                failed.store(true, std::memory_order_relaxed);
            }
        }
    };
    std::vector<std::thread> pool;
    int n_threads = std::min<std::size_t>(static_cast<std::size_t>(workers), count);
    pool.reserve(static_cast<std::size_t>(n_threads));
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(run);
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

}  // namespace shrinkage
