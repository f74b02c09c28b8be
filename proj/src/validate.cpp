#include "urnlab/validate.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "urnlab/embedding.hpp"
#include "urnlab/oracle.hpp"
#include "urnlab/observables.hpp"
#include "urnlab/parallel.hpp"
#include "urnlab/rng.hpp"
#include "urnlab/stats.hpp"
#include "urnlab/theory.hpp"
#include "urnlab/urn.hpp"

namespace urnlab {

namespace {

std::string fmt(const char* pattern, double v) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), pattern, v);
    return buf;
}

std::string cell_name(const UrnParams& p, std::int64_t t) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "beta=%g r=%g t=%lld", p.beta, p.r,
                  static_cast<long long>(t));
    return buf;
}

/// Counts of X1(t) - x01 over a batch of terminal states.
template <class Runner>
std::vector<std::int64_t> terminal_counts(const UrnParams& p, std::int64_t t,
                                          std::int64_t runs, std::uint64_t seed,
                                          int n_threads, Runner runner) {
    std::vector<std::int64_t> x1(static_cast<std::size_t>(runs));
    parallel_for_index(runs, n_threads, [&](std::int64_t i) {
        x1[static_cast<std::size_t>(i)] = runner(p, t, derive_run_seed(seed, i));
    });
    std::vector<std::int64_t> counts(static_cast<std::size_t>(t) + 1, 0);
    for (auto v : x1) ++counts[static_cast<std::size_t>(v - p.x01)];
    return counts;
}

// Regime-cell grid: one point in every cell of the tail table.
const std::vector<UrnParams> kCellGrid = {
    {0.0, 1.0, 1, 1},  {0.8, 1.0, 1, 1}, {1.0, 1.0, 1, 1}, {1.5, 1.0, 1, 1},
    {0.4, 1.2, 1, 1},  {0.8, 1.2, 1, 1}, {1.0, 1.2, 1, 1}, {2.0, 1.2, 1, 1},
};

void sampler_vs_oracle(std::vector<CheckResult>& out, const std::string& suite,
                       const ValidateOptions& opt, bool embedded) {
    for (const auto& p : kCellGrid) {
        for (std::int64_t t : {std::int64_t{8}, std::int64_t{16}}) {
            const auto exact = exact_state_distribution(p, t);
            const auto counts = terminal_counts(
                p, t, opt.runs, opt.seed ^ (embedded ? 0x9E37u : 0u), opt.n_threads,
                [embedded](const UrnParams& pp, std::int64_t tt, std::uint64_t s) {
                    const auto summary =
                        embedded ? embedded_trajectory(pp, tt, s) : simulate(pp, tt, s);
                    return summary.final_state.x1;
                });
            const auto chi2 = chi2_goodness_of_fit(exact.probs, counts);
            CheckResult r;
            r.suite = suite;
            r.name = cell_name(p, t);
            r.statistic = chi2.p_value;
            r.pass = chi2.p_value > 1e-3;
            r.detail = "chi2=" + fmt("%.2f", chi2.statistic) +
                       " df=" + std::to_string(chi2.df) + " p=" + fmt("%.3g", chi2.p_value);
            out.push_back(r);
        }
    }
}

void suite_oracle(std::vector<CheckResult>& out, const ValidateOptions& opt) {
    sampler_vs_oracle(out, "oracle", opt, /*embedded=*/false);
}

void suite_embedding(std::vector<CheckResult>& out, const ValidateOptions& opt) {
    sampler_vs_oracle(out, "embedding", opt, /*embedded=*/true);

    // total-variation cross-check of the two samplers at desk scale
    const UrnParams p{1.5, 1.2, 1, 1};
    const std::int64_t t = 8;
    const std::int64_t runs = 100'000;
    const auto direct = terminal_counts(
        p, t, runs, opt.seed + 11, opt.n_threads,
        [](const UrnParams& pp, std::int64_t tt, std::uint64_t s) {
            return simulate(pp, tt, s).final_state.x1;
        });
    const auto embedded = terminal_counts(
        p, t, runs, opt.seed + 12, opt.n_threads,
        [](const UrnParams& pp, std::int64_t tt, std::uint64_t s) {
            return embedded_trajectory(pp, tt, s).final_state.x1;
        });
    std::vector<double> dp(direct.size()), ep(embedded.size());
    for (std::size_t i = 0; i < direct.size(); ++i) {
        dp[i] = static_cast<double>(direct[i]) / static_cast<double>(runs);
        ep[i] = static_cast<double>(embedded[i]) / static_cast<double>(runs);
    }
    const double tv = total_variation(dp, ep);
    CheckResult r;
    r.suite = "embedding";
    r.name = "total variation direct vs embedded, beta=1.5 r=1.2 t=8";
    r.statistic = tv;
    r.pass = tv < 0.01;
    r.detail = "tv=" + fmt("%.4f", tv) + " (limit 0.01)";
    out.push_back(r);
}

void suite_dominance(std::vector<CheckResult>& out, const ValidateOptions& opt) {
    struct EqualPair {
        double beta_strong, beta_weak;
    };
    const std::vector<EqualPair> equal_pairs = {{1.2, 0.8}, {2.0, 1.0}, {0.8, 0.5}};
    const std::int64_t horizon = 5'000;

    for (const auto& pr : equal_pairs) {
        const UrnParams strong{pr.beta_strong, 1.0, 1, 1};
        const UrnParams weak{pr.beta_weak, 1.0, 1, 1};
        std::int64_t violations = 0;
        for (std::int64_t i = 0; i < opt.coupled_runs; ++i) {
            const auto pair =
                coupled_equal_fitness(strong, weak, horizon, derive_run_seed(opt.seed, i));
            std::int64_t ties_a = 0, ties_b = 0;
            for (std::int64_t t = 0; t <= horizon; ++t) {
                const auto ga = pair.a.gap_at(t), gb = pair.b.gap_at(t);
                ties_a += pair.a.tied_at(t) ? 1 : 0;
                ties_b += pair.b.tied_at(t) ? 1 : 0;
                if (!(ga >= gb && gb >= 0) || ties_a > ties_b) {
                    ++violations;
                    break;
                }
            }
        }
        CheckResult r;
        r.suite = "dominance";
        r.name = "equal-fitness gap/tie ordering beta=" + fmt("%g", pr.beta_strong) +
                 " vs " + fmt("%g", pr.beta_weak);
        r.statistic = static_cast<double>(violations);
        r.pass = violations == 0;
        r.detail = std::to_string(violations) + " pathwise violations in " +
                   std::to_string(opt.coupled_runs) + " runs";
        out.push_back(r);
    }

    struct TiePair {
        UrnParams a, b;
        const char* cond;
    };
    const std::vector<TiePair> tie_pairs = {
        {{1.5, 1.2, 3, 1}, {1.0, 1.1, 2, 2}, "(i)"},
        {{1.0, 1.2, 1, 3}, {0.5, 1.2, 2, 2}, "(ii)"},
        {{2.0, 1.5, 4, 2}, {1.5, 1.5, 3, 3}, "(i)"},
    };
    for (const auto& pr : tie_pairs) {
        std::int64_t violations = 0;
        for (std::int64_t i = 0; i < opt.coupled_runs; ++i) {
            const auto pair =
                coupled_first_tie(pr.a, pr.b, horizon, derive_run_seed(opt.seed + 7, i));
            const auto ta = pair.a.first_tie();
            const auto tb = pair.b.first_tie();
            // a's first tie observed means b already tied, no later than a
            if (ta && (!tb || *tb > *ta)) ++violations;
        }
        CheckResult r;
        r.suite = "dominance";
        r.name = std::string("first-tie ordering, condition ") + pr.cond;
        r.statistic = static_cast<double>(violations);
        r.pass = violations == 0;
        r.detail = std::to_string(violations) + " pathwise violations in " +
                   std::to_string(opt.coupled_runs) + " runs";
        out.push_back(r);
    }
}

void suite_bounds(std::vector<CheckResult>& out, const ValidateOptions& opt) {
    // exact exponential bound dominates every empirical intensity tail
    const std::int64_t horizon = 10'000;
    for (double beta : {0.5, 1.0, 2.0}) {
        const UrnParams p{beta, 1.2, 1, 1};
        const auto batch = simulate_batch(p, horizon, opt.runs, opt.seed + 31, opt.n_threads);
        std::int64_t max_n = 1;
        for (const auto& s : batch) max_n = std::max(max_n, s.intensity_observed);
        const auto grid = unit_grid(1, max_n);
        const auto curve = intensity_tail(batch, grid);
        bool ok = true;
        double worst = 0.0;
        for (std::size_t i = 0; i < curve.grid.size(); ++i) {
            const double bound =
                intensity_upper_bound(p, static_cast<std::int64_t>(curve.grid[i]));
            const double slack = curve.ccdf[i] - 3.0 * curve.std_error[i] - bound;
            worst = std::max(worst, slack);
            if (slack > 0.0) ok = false;
        }
        CheckResult r;
        r.suite = "bounds";
        r.name = "intensity bound domination beta=" + fmt("%g", beta) + " r=1.2";
        r.statistic = worst;
        r.pass = ok;
        r.detail = "max(ccdf - 3se - bound)=" + fmt("%.3g", worst);
        out.push_back(r);
    }

    // Gaussian bracket for the probability of ever tying
    {
        const UrnParams p{1.5, 1.0, 120, 80};
        const std::int64_t mc_horizon = 100'000;
        const auto bounds = first_tie_prob_bounds(p.x01, p.x02, p.beta, 0.1);
        std::vector<std::int64_t> tied(static_cast<std::size_t>(opt.runs), 0);
        parallel_for_index(opt.runs, opt.n_threads, [&](std::int64_t i) {
            const auto summary = simulate(p, mc_horizon, derive_run_seed(opt.seed + 41, i));
            tied[static_cast<std::size_t>(i)] = summary.intensity_observed > 0 ? 1 : 0;
        });
        std::int64_t hits = 0;
        for (auto v : tied) hits += v;
        const double phat = static_cast<double>(hits) / static_cast<double>(opt.runs);
        const double slack = 0.02;  // absorbs the O(|x|^-beta) correction
        CheckResult r;
        r.suite = "bounds";
        r.name = "first-tie Gaussian bracket beta=1.5 x=(120,80)";
        r.statistic = phat;
        r.pass = phat >= bounds.lower - slack && phat <= bounds.upper + slack;
        r.detail = "p=" + fmt("%.5f", phat) + " bracket [" + fmt("%.5f", bounds.lower) +
                   ", " + fmt("%.5f", bounds.upper) + "] slack 0.02";
        out.push_back(r);
    }
}

}  // namespace

std::vector<CheckResult> run_validate_suite(const std::string& suite,
                                            const ValidateOptions& options) {
    std::vector<CheckResult> out;
    bool known = false;
    if (suite == "oracle" || suite == "all") {
        suite_oracle(out, options);
        known = true;
    }
    if (suite == "embedding" || suite == "all") {
        suite_embedding(out, options);
        known = true;
    }
    if (suite == "dominance" || suite == "all") {
        suite_dominance(out, options);
        known = true;
    }
    if (suite == "bounds" || suite == "all") {
        suite_bounds(out, options);
        known = true;
    }
    if (!known)
        throw std::invalid_argument(
            "unknown suite '" + suite + "' (expected oracle, embedding, dominance, bounds, all)");
    return out;
}

}  // namespace urnlab
