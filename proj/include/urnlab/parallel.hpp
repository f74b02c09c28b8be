#pragma once

#include <cstdint>
#include <functional>

namespace urnlab {

/// Runs body(i) for i in [0, n). n_threads = 0 picks hardware concurrency.
/// Bodies must be independent; results keyed by index stay deterministic
/// regardless of the thread count.
void parallel_for_index(std::int64_t n, int n_threads,
                        const std::function<void(std::int64_t)>& body);

}  // namespace urnlab
