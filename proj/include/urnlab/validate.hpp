#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace urnlab {

struct CheckResult {
    std::string suite;
    std::string name;
    bool pass = false;
    double statistic = 0.0;
    std::string detail;
};

struct ValidateOptions {
    std::uint64_t seed = 20240601;
    std::int64_t runs = 20'000;         // per chi-square cell
    std::int64_t coupled_runs = 1'000;  // per coupling pair
    int n_threads = 0;
};

/// suite is one of oracle, embedding, dominance, bounds, all.
/// oracle     - simulated state distributions vs the exact DP, chi-square at
///              t in {8, 16} on a grid covering every regime cell
/// embedding  - clock-race sampler vs the exact DP, same grid, plus the
///              total-variation cross-check against direct simulation
/// dominance  - pathwise coupling invariants, zero violations allowed
/// bounds     - exact intensity bound dominates empirical curves; Gaussian
///              first-tie bracket contains the Monte Carlo estimate
std::vector<CheckResult> run_validate_suite(const std::string& suite,
                                            const ValidateOptions& options = {});

}  // namespace urnlab
