#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <vector>

#include "urnlab/observables.hpp"
#include "urnlab/params.hpp"

namespace urnlab {

/// Exact state distribution at a fixed time, from the forward push of
/// probability mass through the one-step kernel. Support is the reachable set
/// {x1 + x2 = x01 + x02 + t, x_k >= x0k}; x1 - x01 indexes `probs`.
struct ExactDistribution {
    std::int64_t t = 0;
    std::int64_t x01 = 0, x02 = 0;

    std::vector<double> probs;  // probs[i] = P[X1(t) = x01 + i]

    double prob(std::int64_t x1, std::int64_t x2) const;
    std::map<std::pair<std::int64_t, std::int64_t>, double> entries() const;
};

inline constexpr std::int64_t kMaxOracleTime = 64;
inline constexpr std::int64_t kMaxAugmentedOracleTime = 24;

/// Forward DP in double precision; t <= 64. Roundoff stays ~1e-12, far below
/// any statistical tolerance this oracle is compared against.
ExactDistribution exact_state_distribution(const UrnParams& params, std::int64_t t);

/// P[X1(t) = X2(t)] for t = 0..horizon (zero at parity-violating t); horizon <= 64.
std::vector<double> exact_tie_time_probabilities(const UrnParams& params,
                                                 std::int64_t horizon);

/// Exact distribution of last-tie-before-horizon (value -1 when no tie) or of
/// the tie count at the horizon, by DP over states augmented with
/// (x1, last tie) or (x1, tie count); horizon <= 24.
struct ExactTailDistribution {
    Metric metric = Metric::duration;
    std::int64_t horizon = 0;
    std::map<std::int64_t, double> pmf;

    double ccdf(std::int64_t v) const;  // P[value >= v]
    TailCurve to_tail_curve(std::span<const double> grid) const;
};

ExactTailDistribution exact_censored_tail(const UrnParams& params, std::int64_t horizon,
                                          Metric metric);

/// CSV with columns t,x1,x2,prob for golden-file regression tests.
void write_distribution_csv(std::ostream& os, const ExactDistribution& dist);

}  // namespace urnlab
