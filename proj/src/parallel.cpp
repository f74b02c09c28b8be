#include "urnlab/parallel.hpp"

#include <algorithm>
#include <thread>
#include <vector>

namespace urnlab {

void parallel_for_index(std::int64_t n, int n_threads,
                        const std::function<void(std::int64_t)>& body) {
    if (n <= 0) return;
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (n_threads <= 0) n_threads = std::max(1, hw);
    n_threads = static_cast<int>(std::min<std::int64_t>(n_threads, n));

    if (n_threads == 1) {
        for (std::int64_t i = 0; i < n; ++i) body(i);
        return;
    }

    std::vector<std::thread> workers;
    workers.reserve(n_threads);
    for (int w = 0; w < n_threads; ++w) {
        const std::int64_t lo = n * w / n_threads;
        const std::int64_t hi = n * (w + 1) / n_threads;
        workers.emplace_back([lo, hi, &body] {
            for (std::int64_t i = lo; i < hi; ++i) body(i);
        });
    }
    for (auto& t : workers) t.join();
}

}  // namespace urnlab
