#include "alecut/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace alecut {

int worker_count() {
    const char* env = std::getenv("ALECUT_WORKERS");
    if (env == nullptr) return 1;
    const int w = std::atoi(env);
    return std::clamp(w, 1, 256);
}

void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& fn) {
    const int workers = std::min<std::int64_t>(worker_count(), n > 0 ? n : 1);
    if (workers <= 1) {
        for (std::int64_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> threads;
    threads.reserve(workers);
    const std::int64_t chunk = (n + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const std::int64_t lo = w * chunk;
        const std::int64_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        threads.emplace_back([lo, hi, &fn] {
            for (std::int64_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& t : threads) t.join();
}

} // namespace alecut
