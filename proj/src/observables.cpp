#include "urnlab/observables.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace urnlab {

std::string to_string(Metric m) {
    return m == Metric::duration ? "duration" : "intensity";
}

std::string to_string(FitScale s) {
    return s == FitScale::loglog ? "log-log" : "semi-log";
}

std::vector<RunObservation> observe(std::span<const TieSummary> summaries) {
    std::vector<RunObservation> out;
    out.reserve(summaries.size());
    for (const auto& s : summaries)
        out.push_back({s.last_tie_or(-1), s.intensity_observed, s.leader});
    return out;
}

namespace {

std::int64_t shared_horizon(std::span<const TieSummary> summaries) {
    if (summaries.empty()) throw std::invalid_argument("empty batch");
    const std::int64_t h = summaries.front().final_state.t;
    for (const auto& s : summaries)
        if (s.final_state.t != h)
            throw std::invalid_argument("summaries do not share a horizon");
    return h;
}

TailCurve curve_from_values(std::vector<std::int64_t>&& values,
                            std::span<const std::int64_t> last_ties, Metric metric,
                            std::int64_t horizon, std::span<const double> grid) {
    if (values.empty()) throw std::invalid_argument("empty batch");
    if (!std::is_sorted(grid.begin(), grid.end()))
        throw std::invalid_argument("grid must be ascending");
    if (!grid.empty() && grid.back() > static_cast<double>(horizon))
        throw std::invalid_argument("grid exceeds the horizon");

    TailCurve c;
    c.metric = metric;
    c.horizon = horizon;
    c.n_samples = static_cast<std::int64_t>(values.size());
    c.grid.assign(grid.begin(), grid.end());

    std::sort(values.begin(), values.end());
    const double n = static_cast<double>(values.size());
    const double cutoff = static_cast<double>(horizon) / 100.0;
    c.ccdf.reserve(grid.size());
    for (double g : grid) {
        const auto it = std::lower_bound(values.begin(), values.end(),
                                         static_cast<std::int64_t>(std::ceil(g)));
        const std::int64_t count = static_cast<std::int64_t>(values.end() - it);
        const double p = static_cast<double>(count) / n;
        c.counts.push_back(count);
        c.ccdf.push_back(p);
        c.std_error.push_back(std::sqrt(p * (1.0 - p) / n));
        c.trusted.push_back(g <= cutoff ? 1 : 0);
    }

    std::int64_t late = 0;
    for (std::int64_t lt : last_ties)
        if (static_cast<double>(lt) > cutoff) ++late;
    c.censored_fraction = static_cast<double>(late) / static_cast<double>(last_ties.size());
    return c;
}

}  // namespace

TailCurve duration_tail(std::span<const RunObservation> runs, std::int64_t horizon,
                        std::span<const double> grid) {
    std::vector<std::int64_t> values, last;
    values.reserve(runs.size());
    last.reserve(runs.size());
    for (const auto& r : runs) {
        values.push_back(r.last_tie);
        last.push_back(r.last_tie);
    }
    return curve_from_values(std::move(values), last, Metric::duration, horizon, grid);
}

TailCurve duration_tail(std::span<const TieSummary> summaries, std::span<const double> grid) {
    const auto h = shared_horizon(summaries);
    const auto runs = observe(summaries);
    return duration_tail(runs, h, grid);
}

TailCurve intensity_tail(std::span<const RunObservation> runs, std::int64_t horizon,
                         std::span<const double> grid) {
    std::vector<std::int64_t> values, last;
    values.reserve(runs.size());
    last.reserve(runs.size());
    for (const auto& r : runs) {
        values.push_back(r.n_ties);
        last.push_back(r.last_tie);
    }
    return curve_from_values(std::move(values), last, Metric::intensity, horizon, grid);
}

TailCurve intensity_tail(std::span<const TieSummary> summaries, std::span<const double> grid) {
    const auto h = shared_horizon(summaries);
    const auto runs = observe(summaries);
    return intensity_tail(runs, h, grid);
}

ConditionalTails conditional_duration_tails(std::span<const RunObservation> runs,
                                            std::int64_t horizon,
                                            std::span<const double> grid) {
    std::vector<RunObservation> side1, side2;
    for (const auto& r : runs) {
        if (r.leader == Leader::color1) side1.push_back(r);
        else if (r.leader == Leader::color2) side2.push_back(r);
    }
    ConditionalTails out;
    out.leader1 = side1.empty() ? TailCurve{Metric::duration, {}, {}, {}, {}, {}, 0, horizon, 0.0}
                                : duration_tail(side1, horizon, grid);
    out.leader2 = side2.empty() ? TailCurve{Metric::duration, {}, {}, {}, {}, {}, 0, horizon, 0.0}
                                : duration_tail(side2, horizon, grid);
    return out;
}

ConditionalTails conditional_duration_tails(std::span<const TieSummary> summaries,
                                            std::span<const double> grid) {
    const auto h = shared_horizon(summaries);
    const auto runs = observe(summaries);
    return conditional_duration_tails(runs, h, grid);
}

double SlopeFit::value_at(double g) const {
    const double x = scale == FitScale::loglog ? std::log(g) : g;
    return std::exp(intercept + slope * x);
}

SlopeFit fit_slope(const TailCurve& curve, FitWindow window, FitScale scale,
                   double noise_floor_runs) {
    if (curve.empty()) throw std::invalid_argument("fit_slope: empty curve");
    const double floor = noise_floor_runs / static_cast<double>(curve.n_samples);
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < curve.grid.size(); ++i) {
        const double g = curve.grid[i];
        if (g < window.lo || g > window.hi) continue;
        if (!curve.trusted[i]) continue;
        if (!(curve.ccdf[i] > floor)) continue;
        xs.push_back(scale == FitScale::loglog ? std::log(g) : g);
        ys.push_back(std::log(curve.ccdf[i]));
    }
    if (xs.size() < 10)
        throw std::runtime_error("fit_slope: fewer than 10 usable points in window");

    const double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double denom = n * sxx - sx * sx;
    if (denom <= 0.0) throw std::runtime_error("fit_slope: degenerate abscissa");

    SlopeFit fit;
    fit.scale = scale;
    fit.window = window;
    fit.n_points = static_cast<int>(xs.size());
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    double ss = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = ys[i] - fit.intercept - fit.slope * xs[i];
        ss += r * r;
    }
    fit.residual_rms = std::sqrt(ss / n);
    return fit;
}

std::vector<double> log_spaced_grid(double lo, double hi, int points_per_decade) {
    if (!(lo >= 1.0) || hi < lo || points_per_decade < 1)
        throw std::invalid_argument("log_spaced_grid: bad range");
    std::vector<double> grid;
    const double step = 1.0 / points_per_decade;
    double prev = -1.0;
    for (double e = std::log10(lo);; e += step) {
        double g = std::round(std::pow(10.0, e));
        if (g > hi) break;
        if (g != prev) grid.push_back(g);
        prev = g;
    }
    if (grid.empty() || grid.back() < hi) grid.push_back(hi);
    return grid;
}

std::vector<double> unit_grid(std::int64_t lo, std::int64_t hi) {
    std::vector<double> grid;
    for (std::int64_t v = lo; v <= hi; ++v) grid.push_back(static_cast<double>(v));
    return grid;
}

void write_tail_curve_csv(std::ostream& os, const TailCurve& curve) {
    os << "metric,grid,ccdf,stderr,trusted\n";
    char buf[160];
    for (std::size_t i = 0; i < curve.grid.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%s,%.17g,%.17g,%.17g,%d\n",
                      to_string(curve.metric).c_str(), curve.grid[i], curve.ccdf[i],
                      curve.std_error[i], static_cast<int>(curve.trusted[i]));
        os << buf;
    }
}

TailCurve read_tail_curve_csv(std::istream& is, std::int64_t n_samples, std::int64_t horizon) {
    TailCurve c;
    c.n_samples = n_samples;
    c.horizon = horizon;
    std::string line;
    while (std::getline(is, line) && (line.empty() || line[0] == '#')) {}
    if (line.empty()) throw std::runtime_error("empty curve CSV");
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::stringstream ss(line);
        std::string metric, field;
        std::getline(ss, metric, ',');
        c.metric = metric == "intensity" ? Metric::intensity : Metric::duration;
        std::getline(ss, field, ',');
        c.grid.push_back(std::stod(field));
        std::getline(ss, field, ',');
        c.ccdf.push_back(std::stod(field));
        c.counts.push_back(static_cast<std::int64_t>(
            std::llround(c.ccdf.back() * static_cast<double>(n_samples))));
        std::getline(ss, field, ',');
        c.std_error.push_back(std::stod(field));
        std::getline(ss, field, ',');
        c.trusted.push_back(static_cast<std::uint8_t>(std::stoi(field)));
    }
    return c;
}

}  // namespace urnlab
