#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace urnlab {

/// 64-bit finalizer with full avalanche (SplitMix64 mixing function).
constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

/// Seed of run `run` in a batch: a pure function of (master_seed, run), so the
/// result of a batch does not depend on how runs are scheduled over threads.
constexpr std::uint64_t derive_run_seed(std::uint64_t master_seed, std::uint64_t run) {
    return mix64(master_seed + kGoldenGamma * (run + 1));
}

/// Counter-based splittable generator (SplitMix64 with a per-stream odd
/// increment). Each seed selects both a start state and an increment, so
/// distinct runs get unrelated streams.
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t seed = 0)
        : state_(seed), gamma_(mix64(seed ^ 0xA5A5A5A5A5A5A5A5ULL) | 1ULL) {}

    result_type operator()() { return mix64(state_ += gamma_); }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<std::uint64_t>::max(); }

private:
    std::uint64_t state_;
    std::uint64_t gamma_;
};

using Rng = SplitMix64;

/// Uniform draw in [0, 1) with 53-bit resolution.
template <class G>
inline double uniform01(G& g) {
    return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

/// Uniform draw strictly inside (0, 1); safe under log().
template <class G>
inline double uniform01_open(G& g) {
    return (static_cast<double>(g() >> 12) + 0.5) * 0x1.0p-52;
}

/// Exponential draw with the given rate (mean 1/rate), strictly positive.
template <class G>
inline double exponential(G& g, double rate) {
    return -std::log(uniform01_open(g)) / rate;
}

}  // namespace urnlab
