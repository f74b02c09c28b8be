#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "urnlab/params.hpp"

namespace urnlab {

enum class Metric { duration, intensity };

std::string to_string(Metric m);

/// What a tail estimator needs from one run.
struct RunObservation {
    std::int64_t last_tie = -1;  // -1 when the run never tied
    std::int64_t n_ties = 0;
    Leader leader = Leader::tied;
};

std::vector<RunObservation> observe(std::span<const TieSummary> summaries);

/// Empirical complementary CDF of a per-run metric on an ascending grid.
/// Estimates are reported on the whole grid but carry a trusted marker only
/// for grid values <= horizon/100, the range where horizon censoring is
/// negligible. censored_fraction is the share of runs whose last tie falls
/// beyond that cutoff (their true duration and intensity may be larger than
/// observed).
struct TailCurve {
    Metric metric = Metric::duration;
    std::vector<double> grid;
    std::vector<double> ccdf;
    std::vector<double> std_error;        // sqrt(p(1-p)/n) at p = ccdf[i]
    std::vector<std::int64_t> counts;     // runs with value >= grid[i]
    std::vector<std::uint8_t> trusted;    // 1 iff grid[i] <= horizon/100
    std::int64_t n_samples = 0;
    std::int64_t horizon = 0;
    double censored_fraction = 0.0;

    bool empty() const { return n_samples == 0; }
};

/// ccdf[i] = fraction of runs whose last observed tie is >= grid[i]; runs with
/// no tie contribute zero everywhere.
TailCurve duration_tail(std::span<const RunObservation> runs, std::int64_t horizon,
                        std::span<const double> grid);
TailCurve duration_tail(std::span<const TieSummary> summaries, std::span<const double> grid);

/// ccdf[i] = fraction of runs with at least grid[i] observed ties.
TailCurve intensity_tail(std::span<const RunObservation> runs, std::int64_t horizon,
                         std::span<const double> grid);
TailCurve intensity_tail(std::span<const TieSummary> summaries, std::span<const double> grid);

/// Duration curves split by the leader at the horizon. A side with zero runs
/// yields an empty curve (n_samples = 0).
struct ConditionalTails {
    TailCurve leader1;
    TailCurve leader2;
};

ConditionalTails conditional_duration_tails(std::span<const RunObservation> runs,
                                            std::int64_t horizon,
                                            std::span<const double> grid);
ConditionalTails conditional_duration_tails(std::span<const TieSummary> summaries,
                                            std::span<const double> grid);

enum class FitScale { loglog, semilog };

std::string to_string(FitScale s);

struct FitWindow {
    double lo = 0.0;
    double hi = 0.0;
};

/// Least-squares line through (log grid, log ccdf) on log-log scale or
/// (grid, log ccdf) on semi-log scale. Natural logarithms throughout.
struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    FitWindow window;
    double residual_rms = 0.0;
    FitScale scale = FitScale::loglog;
    int n_points = 0;

    double value_at(double g) const;  // fitted ccdf at grid value g
};

/// Fits over grid points inside the window that are trusted and above the
/// noise floor ccdf > noise_floor_runs / n_samples. Throws std::runtime_error
/// when fewer than 10 points qualify.
SlopeFit fit_slope(const TailCurve& curve, FitWindow window, FitScale scale,
                   double noise_floor_runs = 10.0);

/// Ascending unique integer-valued grid, log-spaced between lo and hi.
std::vector<double> log_spaced_grid(double lo, double hi, int points_per_decade);
/// Ascending integer grid lo, lo+1, ..., hi.
std::vector<double> unit_grid(std::int64_t lo, std::int64_t hi);

/// CSV with columns metric,grid,ccdf,stderr,trusted.
void write_tail_curve_csv(std::ostream& os, const TailCurve& curve);
TailCurve read_tail_curve_csv(std::istream& is, std::int64_t n_samples, std::int64_t horizon);

}  // namespace urnlab
