#include "jacsums/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace jacsums {

namespace {
std::atomic<int> g_max_threads{0};
}

void set_max_threads(int n) { g_max_threads.store(n > 0 ? n : 0); }

int max_threads() {
    int n = g_max_threads.load();
    if (n > 0) return n;
    unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
}

void parallel_chunks(std::int64_t begin0, std::int64_t end0, int nchunks,
                     const std::function<void(int, std::int64_t, std::int64_t)>& fn) {
    if (end0 <= begin0) return;
    const std::int64_t total = end0 - begin0;
    nchunks = static_cast<int>(std::min<std::int64_t>(nchunks, total));
    if (nchunks < 1) nchunks = 1;

    auto chunk_bounds = [&](int i) {
        // Fixed partition: depends only on (begin0, end0, nchunks).
        std::int64_t lo = begin0 + total * i / nchunks;
        std::int64_t hi = begin0 + total * (i + 1) / nchunks;
        return std::pair<std::int64_t, std::int64_t>(lo, hi);
    };

    const int nthreads = std::min(max_threads(), nchunks);
    if (nthreads <= 1) {
        for (int i = 0; i < nchunks; ++i) {
            auto [lo, hi] = chunk_bounds(i);
            fn(i, lo, hi);
        }
        return;
    }

    std::atomic<int> next{0};
    auto worker = [&]() {
        for (;;) {
            int i = next.fetch_add(1);
            if (i >= nchunks) break;
            auto [lo, hi] = chunk_bounds(i);
            fn(i, lo, hi);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(nthreads - 1);
    for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
}

} // namespace jacsums
