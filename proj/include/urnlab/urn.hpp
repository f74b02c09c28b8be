#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "urnlab/params.hpp"

namespace urnlab {

/// tab[j] = j^beta for j = 0..max_count, with exact fast paths for
/// beta in {0, 1/2, 1, 3/2, 2, 3}. tab[0] is 1 when beta = 0 (0^0 = 1),
/// 0 otherwise.
std::vector<double> power_table(double beta, std::int64_t max_count);

/// One-step kernel: (p1, p2) with p1 = r*x1^beta / (r*x1^beta + x2^beta) and
/// p2 = 1 - p1 computed as the exact complement. Rejects a zero count when
/// beta > 0; with beta = 0 zero counts are allowed and the kernel reduces to
/// (r/(r+1), 1/(r+1)).
std::pair<double, double> transition_probabilities(std::int64_t x1, std::int64_t x2,
                                                   const UrnParams& params);
std::pair<double, double> transition_probabilities(const UrnState& state,
                                                   const UrnParams& params);

/// Sequential simulation of one trajectory up to the horizon (no early exit;
/// see TieSummary for the censoring convention). `seed` seeds the per-run
/// generator directly.
TieSummary simulate(const UrnParams& params, std::int64_t horizon, std::uint64_t seed);

/// Independent runs; run i is simulate(params, horizon, derive_run_seed(master_seed, i)).
/// Parallel over runs, output ordered by run index, invariant to n_threads.
std::vector<TieSummary> simulate_batch(const UrnParams& params, std::int64_t horizon,
                                       std::int64_t n_runs, std::uint64_t master_seed,
                                       int n_threads = 0);

enum class CouplingMode { equal_fitness_sorted, first_tie };

/// One trajectory of a coupled pair; x2 is implied by conservation.
struct CoupledTrajectory {
    UrnParams params;
    std::vector<std::int64_t> x1;  // x1[t], t = 0..horizon

    std::int64_t x2_at(std::int64_t t) const { return params.total0() + t - x1[t]; }
    std::int64_t gap_at(std::int64_t t) const { return x2_at(t) - x1[t]; }
    bool tied_at(std::int64_t t) const { return x1[t] * 2 == params.total0() + t; }
    std::int64_t horizon() const { return static_cast<std::int64_t>(x1.size()) - 1; }

    /// First t with a tie, or nullopt if none occurred before the horizon.
    std::optional<std::int64_t> first_tie() const;
    /// Number of ties with time <= t.
    std::int64_t ties_through(std::int64_t t) const;
};

/// Two trajectories driven by one shared uniform stream, index-aligned.
struct CoupledPair {
    CoupledTrajectory a;
    CoupledTrajectory b;
    CouplingMode mode = CouplingMode::equal_fitness_sorted;
    std::uint64_t seed = 0;
};

/// Sorted (min, max) coupling for equal fitness: `a` runs feedback strength
/// strong.beta, `b` runs weak.beta <= strong.beta, both from the shared
/// uniforms. In trajectory terms x1 holds the min process, so on every path
/// gap_a(t) >= gap_b(t) >= 0 and ties_through satisfies a <= b.
/// Requires r = 1 on both sides and a common x0.
CoupledPair coupled_equal_fitness(const UrnParams& strong, const UrnParams& weak,
                                  std::int64_t horizon, std::uint64_t seed);

/// Shared-uniform coupling of two urns for the first-tie ordering. Requires
/// a.beta >= b.beta and one of
///   (i)  a.r >= b.r and a.x01 >= b.x01 >= b.x02 >= a.x02,
///   (ii) a.r == b.r and a.x01 <= b.x01 <= b.x02 <= a.x02;
/// then the first tie of `a` occurs no earlier than the first tie of `b` on
/// every coupled path.
CoupledPair coupled_first_tie(const UrnParams& a, const UrnParams& b,
                              std::int64_t horizon, std::uint64_t seed);

}  // namespace urnlab
