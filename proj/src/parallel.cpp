#include "radgas/parallel.hpp"

#include <cstdlib>
#include <thread>
#include <vector>

namespace radgas {

int worker_count() {
    static int cached = [] {
        const char* env = std::getenv("RADGAS_THREADS");
        long n = 0;
        if (env && *env) n = std::strtol(env, nullptr, 10);
        if (n <= 0) n = (long)std::thread::hardware_concurrency();
        if (n <= 0) n = 1;
        if (n > 64) n = 64;
        return (int)n;
    }();
    return cached;
}

void parallel_for(int begin, int end, const std::function<void(int, int)>& body) {
    const int n = end - begin;
    if (n <= 0) return;
    int workers = worker_count();
    if (workers > n) workers = n;
    if (workers <= 1 || n < 16) {
        body(begin, end);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const int chunk = (n + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const int lo = begin + w * chunk;
        const int hi = std::min(end, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&body, lo, hi] { body(lo, hi); });
    }
    for (auto& t : pool) t.join();
}

} // namespace radgas
