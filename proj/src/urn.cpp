#include "urnlab/urn.hpp"

#include <cmath>
#include <stdexcept>

#include "urnlab/parallel.hpp"
#include "urnlab/rng.hpp"

namespace urnlab {

namespace {

double int_pow(double base, double beta) {
    if (beta == 0.0) return 1.0;
    if (beta == 1.0) return base;
    if (beta == 2.0) return base * base;
    if (beta == 3.0) return base * base * base;
    if (beta == 0.5) return std::sqrt(base);
    if (beta == 1.5) return base * std::sqrt(base);
    return std::pow(base, beta);
}

}  // namespace

std::vector<double> power_table(double beta, std::int64_t max_count) {
    if (max_count < 0) throw std::invalid_argument("power_table: negative max_count");
    std::vector<double> tab(static_cast<std::size_t>(max_count) + 1);
    // IEEE pow(0, 0) = 1, which is exactly the beta = 0 random-walk convention.
    tab[0] = (beta == 0.0) ? 1.0 : 0.0;
    for (std::int64_t j = 1; j <= max_count; ++j)
        tab[static_cast<std::size_t>(j)] = int_pow(static_cast<double>(j), beta);
    return tab;
}

std::pair<double, double> transition_probabilities(std::int64_t x1, std::int64_t x2,
                                                   const UrnParams& params) {
    params.validate();
    if (x1 < 0 || x2 < 0)
        throw std::invalid_argument("transition_probabilities: negative count");
    if (params.beta > 0.0 && (x1 == 0 || x2 == 0))
        throw std::invalid_argument(
            "transition_probabilities: zero count with beta > 0 has no defined weight");
    // Ratio form r / (r + (x2/x1)^beta) cannot overflow; pow(inf, 0) = 1 and
    // pow(0, 0) = 1 give the beta = 0 constants even at zero counts.
    const double q = static_cast<double>(x2) / static_cast<double>(x1);
    const double p1 = params.r / (params.r + int_pow(q, params.beta));
    return {p1, 1.0 - p1};
}

std::pair<double, double> transition_probabilities(const UrnState& state,
                                                   const UrnParams& params) {
    return transition_probabilities(state.x1, state.x2, params);
}

namespace {

TieSummary finalize(std::vector<std::int64_t>&& ties, std::int64_t x1, std::int64_t x2,
                    std::int64_t horizon, std::uint64_t seed) {
    TieSummary out;
    out.tie_times = std::move(ties);
    if (!out.tie_times.empty()) out.last_tie = out.tie_times.back();
    out.intensity_observed = static_cast<std::int64_t>(out.tie_times.size());
    out.censored = true;  // every run stops at the horizon, never earlier
    out.final_state = UrnState{x1, x2, horizon};
    out.leader = leader_of(x1, x2);
    out.seed = seed;
    return out;
}

TieSummary run_urn(const UrnParams& p, std::int64_t horizon, std::uint64_t seed,
                   const std::vector<double>& tab) {
    Rng gen(seed);
    std::int64_t x1 = p.x01;
    std::int64_t x2 = p.x02;
    std::vector<std::int64_t> ties;
    if (x1 == x2) ties.push_back(0);
    const double r = p.r;
    for (std::int64_t t = 1; t <= horizon; ++t) {
        const double w1 = r * tab[static_cast<std::size_t>(x1)];
        const double w2 = tab[static_cast<std::size_t>(x2)];
        // u <= w1/(w1+w2) in division-free form, branchless: the division would
        // sit on the loop-carried dependency chain and the 50/50 branch near
        // the diagonal would mispredict every other step
        const std::int64_t take1 = uniform01(gen) * (w1 + w2) <= w1 ? 1 : 0;
        x1 += take1;
        x2 += 1 - take1;
        if (x1 == x2) ties.push_back(t);
    }
    return finalize(std::move(ties), x1, x2, horizon, seed);
}

}  // namespace

TieSummary simulate(const UrnParams& params, std::int64_t horizon, std::uint64_t seed) {
    params.validate();
    if (horizon < 0) throw std::invalid_argument("simulate: negative horizon");
    const auto tab = power_table(params.beta, params.total0() + horizon);
    return run_urn(params, horizon, seed, tab);
}

std::vector<TieSummary> simulate_batch(const UrnParams& params, std::int64_t horizon,
                                       std::int64_t n_runs, std::uint64_t master_seed,
                                       int n_threads) {
    params.validate();
    if (horizon < 0) throw std::invalid_argument("simulate_batch: negative horizon");
    if (n_runs < 1) throw std::invalid_argument("simulate_batch: n_runs must be >= 1");
    const auto tab = power_table(params.beta, params.total0() + horizon);
    std::vector<TieSummary> out(static_cast<std::size_t>(n_runs));
    parallel_for_index(n_runs, n_threads, [&](std::int64_t i) {
        out[static_cast<std::size_t>(i)] =
            run_urn(params, horizon, derive_run_seed(master_seed, static_cast<std::uint64_t>(i)), tab);
    });
    return out;
}

std::optional<std::int64_t> CoupledTrajectory::first_tie() const {
    for (std::int64_t t = 0; t <= horizon(); ++t)
        if (tied_at(t)) return t;
    return std::nullopt;
}

std::int64_t CoupledTrajectory::ties_through(std::int64_t t) const {
    std::int64_t n = 0;
    for (std::int64_t s = 0; s <= t; ++s) n += tied_at(s) ? 1 : 0;
    return n;
}

CoupledPair coupled_equal_fitness(const UrnParams& strong, const UrnParams& weak,
                                  std::int64_t horizon, std::uint64_t seed) {
    strong.validate();
    weak.validate();
    if (strong.r != 1.0 || weak.r != 1.0)
        throw std::invalid_argument("coupled_equal_fitness: requires r = 1 on both sides");
    if (strong.x01 != weak.x01 || strong.x02 != weak.x02)
        throw std::invalid_argument("coupled_equal_fitness: requires a common x0");
    if (strong.beta < weak.beta)
        throw std::invalid_argument("coupled_equal_fitness: requires strong.beta >= weak.beta");
    if (horizon < 0) throw std::invalid_argument("coupled_equal_fitness: negative horizon");

    const std::int64_t lo = std::min(strong.x01, strong.x02);
    const std::int64_t hi = std::max(strong.x01, strong.x02);
    const auto tab_a = power_table(strong.beta, strong.total0() + horizon);
    const auto tab_b = power_table(weak.beta, weak.total0() + horizon);

    CoupledPair pair;
    pair.mode = CouplingMode::equal_fitness_sorted;
    pair.seed = seed;
    pair.a.params = strong;
    pair.b.params = weak;
    pair.a.x1.reserve(static_cast<std::size_t>(horizon) + 1);
    pair.b.x1.reserve(static_cast<std::size_t>(horizon) + 1);

    Rng gen(seed);
    std::int64_t za = lo, zb = lo;       // min process per side
    std::int64_t sa = lo + hi, sb = lo + hi;  // running totals
    pair.a.x1.push_back(za);
    pair.b.x1.push_back(zb);
    for (std::int64_t t = 0; t < horizon; ++t) {
        const double u = uniform01(gen);
        // a new ball joins the min color only when strictly behind and the
        // shared uniform falls below its selection probability
        const std::int64_t za2 = sa - za;
        if (za < za2) {
            const double w = tab_a[static_cast<std::size_t>(za)];
            if (u <= w / (w + tab_a[static_cast<std::size_t>(za2)])) ++za;
        }
        const std::int64_t zb2 = sb - zb;
        if (zb < zb2) {
            const double w = tab_b[static_cast<std::size_t>(zb)];
            if (u <= w / (w + tab_b[static_cast<std::size_t>(zb2)])) ++zb;
        }
        ++sa;
        ++sb;
        pair.a.x1.push_back(za);
        pair.b.x1.push_back(zb);
    }
    return pair;
}

CoupledPair coupled_first_tie(const UrnParams& a, const UrnParams& b,
                              std::int64_t horizon, std::uint64_t seed) {
    a.validate();
    b.validate();
    if (a.beta < b.beta)
        throw std::invalid_argument("coupled_first_tie: requires a.beta >= b.beta");
    const bool cond_i =
        a.r >= b.r && a.x01 >= b.x01 && b.x01 >= b.x02 && b.x02 >= a.x02;
    const bool cond_ii =
        a.r == b.r && a.x01 <= b.x01 && b.x01 <= b.x02 && b.x02 <= a.x02;
    if (!cond_i && !cond_ii)
        throw std::invalid_argument(
            "coupled_first_tie: parameter pair meets neither ordering condition");
    if (horizon < 0) throw std::invalid_argument("coupled_first_tie: negative horizon");

    const auto tab_a = power_table(a.beta, a.total0() + horizon);
    const auto tab_b = power_table(b.beta, b.total0() + horizon);

    CoupledPair pair;
    pair.mode = CouplingMode::first_tie;
    pair.seed = seed;
    pair.a.params = a;
    pair.b.params = b;
    pair.a.x1.reserve(static_cast<std::size_t>(horizon) + 1);
    pair.b.x1.reserve(static_cast<std::size_t>(horizon) + 1);

    Rng gen(seed);
    std::int64_t ya = a.x01, yb = b.x01;
    std::int64_t ya2 = a.x02, yb2 = b.x02;
    pair.a.x1.push_back(ya);
    pair.b.x1.push_back(yb);
    for (std::int64_t t = 0; t < horizon; ++t) {
        const double u = uniform01(gen);
        {
            const double w1 = a.r * tab_a[static_cast<std::size_t>(ya)];
            const double w2 = tab_a[static_cast<std::size_t>(ya2)];
            if (u <= w1 / (w1 + w2)) ++ya; else ++ya2;
        }
        {
            const double w1 = b.r * tab_b[static_cast<std::size_t>(yb)];
            const double w2 = tab_b[static_cast<std::size_t>(yb2)];
            if (u <= w1 / (w1 + w2)) ++yb; else ++yb2;
        }
        pair.a.x1.push_back(ya);
        pair.b.x1.push_back(yb);
    }
    return pair;
}

}  // namespace urnlab
