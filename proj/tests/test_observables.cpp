#include "doctest.h"

#include <stdexcept>

#include <cmath>
#include <sstream>

#include "urnlab/observables.hpp"
#include "urnlab/stats.hpp"
#include "urnlab/urn.hpp"

using namespace urnlab;

TEST_SUITE_BEGIN("observables");

namespace {

TieSummary make_summary(std::vector<std::int64_t> ties, std::int64_t horizon,
                        Leader leader = Leader::color1) {
    TieSummary s;
    s.tie_times = std::move(ties);
    if (!s.tie_times.empty()) s.last_tie = s.tie_times.back();
    s.intensity_observed = static_cast<std::int64_t>(s.tie_times.size());
    s.final_state = UrnState{0, 0, horizon};
    s.leader = leader;
    return s;
}

/// Noise-free synthetic curve for exact fit recovery.
TailCurve synthetic_curve(const std::vector<double>& grid,
                          const std::vector<double>& ccdf, Metric metric) {
    TailCurve c;
    c.metric = metric;
    c.grid = grid;
    c.ccdf = ccdf;
    c.n_samples = 1'000'000'000;
    c.horizon = static_cast<std::int64_t>(grid.back()) * 1000;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        c.std_error.push_back(0.0);
        c.counts.push_back(static_cast<std::int64_t>(ccdf[i] * 1e9));
        c.trusted.push_back(1);
    }
    return c;
}

}  // namespace

TEST_CASE("duration tail counts last ties against the grid") {
    std::vector<TieSummary> batch;
    batch.push_back(make_summary({0}, 100));
    batch.push_back(make_summary({0, 4}, 100));
    batch.push_back(make_summary({2, 4}, 100));
    batch.push_back(make_summary({}, 100));
    const std::vector<double> grid{1.0, 4.0};
    const auto c = duration_tail(batch, grid);
    REQUIRE(c.ccdf.size() == 2);
    CHECK(c.ccdf[0] == doctest::Approx(0.5));
    CHECK(c.ccdf[1] == doctest::Approx(0.5));
    CHECK(c.counts[0] == 2);
    CHECK(c.std_error[0] == doctest::Approx(std::sqrt(0.25 / 4.0)));
}

TEST_CASE("grid point zero sees the t = 0 tie of a symmetric start") {
    std::vector<TieSummary> batch;
    for (int i = 0; i < 5; ++i) batch.push_back(make_summary({0}, 50));
    const std::vector<double> grid{0.0, 1.0};
    const auto c = duration_tail(batch, grid);
    CHECK(c.ccdf[0] == 1.0);
    CHECK(c.ccdf[1] == 0.0);
}

TEST_CASE("intensity tail counts tie totals") {
    std::vector<TieSummary> batch;
    batch.push_back(make_summary({0}, 100));
    batch.push_back(make_summary({0, 2, 4}, 100));
    const std::vector<double> grid{1.0, 2.0, 3.0};
    const auto c = intensity_tail(batch, grid);
    CHECK(c.ccdf[0] == doctest::Approx(1.0));
    CHECK(c.ccdf[1] == doctest::Approx(0.5));
    CHECK(c.ccdf[2] == doctest::Approx(0.5));
}

TEST_CASE("curve invariants: monotone ccdf, range, trusted marker") {
    const UrnParams p{1.2, 1.0, 1, 1};
    const auto batch = simulate_batch(p, 10'000, 2'000, 17, 0);
    const auto grid = log_spaced_grid(1, 10'000, 10);
    const auto c = duration_tail(batch, grid);
    for (std::size_t i = 0; i < c.ccdf.size(); ++i) {
        CHECK(c.ccdf[i] >= 0.0);
        CHECK(c.ccdf[i] <= 1.0);
        if (i > 0) CHECK(c.ccdf[i] <= c.ccdf[i - 1]);
        CHECK(c.trusted[i] == (c.grid[i] <= 100.0 ? 1 : 0));
    }
    CHECK_THROWS_AS(duration_tail(batch, std::vector<double>{1.0, 20'000.0}),
                    std::invalid_argument);
}

TEST_CASE("splitting a batch and merging counts reproduces the full curve") {
    const UrnParams p{0.8, 1.0, 1, 1};
    const auto batch = simulate_batch(p, 5'000, 1'000, 3, 0);
    const auto grid = log_spaced_grid(1, 5'000, 8);
    const auto full = duration_tail(batch, grid);
    const std::vector<TieSummary> first(batch.begin(), batch.begin() + 400);
    const std::vector<TieSummary> second(batch.begin() + 400, batch.end());
    const auto a = duration_tail(first, grid);
    const auto b = duration_tail(second, grid);
    for (std::size_t i = 0; i < grid.size(); ++i)
        CHECK(a.counts[i] + b.counts[i] == full.counts[i]);
}

TEST_CASE("sub-threshold batches keep ccdf high at small times") {
    // below threshold ties recur forever, but the last OBSERVED tie is
    // censored with a scale-free bias ~ (t/horizon)^lambda, so only the far
    // left of the curve sits near one at any finite horizon
    const UrnParams p{0.4, 1.0, 1, 1};
    const std::int64_t horizon = 100'000;
    const auto batch = simulate_batch(p, horizon, 1'000, 23, 0);
    const auto grid = log_spaced_grid(1, 1'000, 6);
    const auto c = duration_tail(batch, grid);
    CHECK(c.ccdf.front() >= 0.90);
    for (std::size_t i = 0; i < c.ccdf.size(); ++i)
        CHECK(c.ccdf[i] >= 0.55);  // trusted range stays majority-tied
}

TEST_CASE("exact power law is recovered to six decimals") {
    std::vector<double> grid, ccdf;
    for (double t = 10.0; t <= 10'000.0; t *= 1.25) {
        grid.push_back(t);
        ccdf.push_back(1.0 / t);
    }
    const auto c = synthetic_curve(grid, ccdf, Metric::duration);
    const auto fit = fit_slope(c, {10.0, 10'000.0}, FitScale::loglog);
    CHECK(fit.slope == doctest::Approx(-1.0).epsilon(1e-9));
    CHECK(fit.residual_rms < 1e-9);
}

TEST_CASE("exact exponential is recovered on the semi-log scale") {
    std::vector<double> grid, ccdf;
    for (double n = 1.0; n <= 60.0; n += 1.0) {
        grid.push_back(n);
        ccdf.push_back(std::pow(2.0 / 2.2, n));
    }
    const auto c = synthetic_curve(grid, ccdf, Metric::intensity);
    const auto fit = fit_slope(c, {1.0, 60.0}, FitScale::semilog);
    CHECK(fit.slope == doctest::Approx(std::log(2.0 / 2.2)).epsilon(1e-9));
    CHECK(std::log(2.0 / 2.2) == doctest::Approx(-0.0953101798043).epsilon(1e-9));
}

TEST_CASE("fit refuses windows with fewer than 10 usable points") {
    std::vector<double> grid, ccdf;
    for (double t = 10.0; t <= 100.0; t *= 1.3) {
        grid.push_back(t);
        ccdf.push_back(1.0 / t);
    }
    const auto c = synthetic_curve(grid, ccdf, Metric::duration);
    CHECK_THROWS_AS(fit_slope(c, {10.0, 20.0}, FitScale::loglog), std::runtime_error);
}

TEST_CASE("simulated equal-fitness duration slope lands near the predicted power") {
    const UrnParams p{1.5, 1.0, 1, 1};
    const auto batch = simulate_batch(p, 100'000, 10'000, 29, 0);
    const auto grid = log_spaced_grid(1, 100'000, 12);
    const auto curve = duration_tail(batch, grid);
    const auto fit = fit_slope(curve, {10.0, 1'000.0}, FitScale::loglog);
    CHECK(fit.slope == doctest::Approx(-1.0).epsilon(0.15));
}

TEST_CASE("conditional split: r = 1 sides are statistically indistinguishable") {
    const UrnParams p{1.0, 1.0, 1, 1};
    const auto batch = simulate_batch(p, 10'000, 4'000, 37, 0);
    std::vector<double> side1, side2;
    for (const auto& s : batch) {
        if (s.leader == Leader::color1) side1.push_back(static_cast<double>(s.last_tie_or(-1)));
        if (s.leader == Leader::color2) side2.push_back(static_cast<double>(s.last_tie_or(-1)));
    }
    CHECK(ks_two_sample_pvalue(side1, side2) > 1e-3);
}

TEST_CASE("conditional split: both leaders appear and sub-curves are fittable") {
    const UrnParams p{2.0, 1.2, 1, 1};
    const auto batch = simulate_batch(p, 100'000, 4'000, 41, 0);
    const auto grid = log_spaced_grid(1, 100'000, 12);
    const auto split = conditional_duration_tails(batch, grid);
    REQUIRE(split.leader2.n_samples > 0);
    REQUIRE(split.leader1.n_samples > 0);
    CHECK(split.leader1.n_samples + split.leader2.n_samples ==
          static_cast<std::int64_t>(batch.size()));

    // the unfit side wins less often but still a solid share at beta = 2
    const double frac2 = static_cast<double>(split.leader2.n_samples) /
                         static_cast<double>(batch.size());
    CHECK(frac2 > 0.1);
    CHECK(frac2 < 0.5);

    const auto l2 = fit_slope(split.leader2, {2.0, 40.0}, FitScale::semilog);
    const auto l1 = fit_slope(split.leader1, {2.0, 200.0}, FitScale::loglog);
    CHECK(l2.slope < 0.0);
    CHECK(l1.slope < 0.0);
}

TEST_CASE("empty side yields an empty flagged curve") {
    std::vector<TieSummary> batch;
    for (int i = 0; i < 20; ++i) batch.push_back(make_summary({0}, 100, Leader::color1));
    const std::vector<double> grid{1.0, 2.0};
    const auto split = conditional_duration_tails(batch, grid);
    CHECK(split.leader1.n_samples == 20);
    CHECK(split.leader2.empty());
}

TEST_CASE("curve CSV round trip") {
    std::vector<TieSummary> batch;
    batch.push_back(make_summary({0, 4}, 1000));
    batch.push_back(make_summary({2}, 1000));
    const auto grid = unit_grid(1, 5);
    const auto c = intensity_tail(batch, grid);
    std::ostringstream os;
    write_tail_curve_csv(os, c);
    std::istringstream is(os.str());
    const auto back = read_tail_curve_csv(is, c.n_samples, c.horizon);
    REQUIRE(back.grid.size() == c.grid.size());
    for (std::size_t i = 0; i < c.grid.size(); ++i) {
        CHECK(back.grid[i] == c.grid[i]);
        CHECK(back.ccdf[i] == c.ccdf[i]);
        CHECK(back.trusted[i] == c.trusted[i]);
    }
}

TEST_SUITE_END();
