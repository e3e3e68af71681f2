#include "grushin/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace grushin {

int thread_count() {
    if (const char* env = std::getenv("GRUSHIN_LAB_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

void parallel_for(long n, const std::function<void(long)>& body) {
    if (n <= 0) return;
    const int workers = static_cast<int>(std::min<long>(thread_count(), n));
    if (workers <= 1 || n == 1) {
        for (long i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<long> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const long i = next.fetch_add(1, std::memory_order_relaxed);
                if (i >= n) return;
                body(i);
            }
        });
    }
    for (std::thread& t : pool) t.join();
}

}  // namespace grushin
