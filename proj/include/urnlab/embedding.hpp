#pragma once

#include <cstdint>

#include "urnlab/params.hpp"
#include "urnlab/rng.hpp"

namespace urnlab {

// Exponential-clock representation of the urn: color k receives its balls at
// the arrival epochs of independent exponential clocks, where the clock fired
// while color k holds j balls has rate f_k * j^beta. Fitnesses are normalized
// to f1 = 1, f2 = 1/r, so clock means are j^-beta and r * j^-beta.

/// Lazily advancing clock stream for one color.
class ClockStream {
public:
    /// color is 1 or 2; start_count is the ball count at which the stream begins.
    ClockStream(int color, std::int64_t start_count, const UrnParams& params);

    /// Draws the waiting time at the current count and advances the count.
    double next(Rng& g);

    std::int64_t count() const { return count_; }
    double rate() const;  // rate of the pending draw

private:
    std::int64_t count_;
    double fitness_;
    double beta_;
};

/// Sum of the clock waiting times for counts x..y-1 of the given color
/// (the time color k needs to go from x to y balls). Zero when y <= x.
/// Compensated summation keeps long sublinear ranges accurate.
double sample_partial_sum(int color, std::int64_t x, std::int64_t y,
                          const UrnParams& params, std::uint64_t seed);

/// Runs the clock race event by event until `horizon` balls are added.
/// Distributionally identical to simulate(); same output schema. Only the two
/// pending arrivals are materialized. Simultaneous arrivals (probability zero,
/// at most a rounding artifact) resolve toward color 1.
TieSummary embedded_trajectory(const UrnParams& params, std::int64_t horizon,
                               std::uint64_t seed);

/// One draw of the race gap S1(x01, y1) - S2(x02, y2).
struct DeltaSample {
    double value = 0.0;
    std::int64_t x01 = 0, x02 = 0;
    std::int64_t y1 = 0, y2 = 0;
};

DeltaSample sample_delta(const UrnParams& params, std::int64_t y1, std::int64_t y2,
                         std::uint64_t seed);

}  // namespace urnlab
