#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace bwangle {

/// Worker cap: BWANGLE_THREADS when set, hardware concurrency otherwise.
inline int thread_count() {
    if (const char* env = std::getenv("BWANGLE_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
}

/// Runs f(i) for i in [0, n).  Results must be written to index-addressed
/// storage so any later reduction can stay in index order (deterministic).
template <class F>
void parallel_for(int n, F&& f) {
    const int workers = std::min(thread_count(), n);
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) f(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (int i = w; i < n; i += workers) f(i);
        });
    }
    for (std::thread& t : pool) t.join();
}

}  // namespace bwangle
