#include "urnlab/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "urnlab/urn.hpp"

namespace urnlab {

double ExactDistribution::prob(std::int64_t x1, std::int64_t x2) const {
    if (x1 < x01 || x2 < x02 || x1 + x2 != x01 + x02 + t) return 0.0;
    return probs[static_cast<std::size_t>(x1 - x01)];
}

std::map<std::pair<std::int64_t, std::int64_t>, double> ExactDistribution::entries() const {
    std::map<std::pair<std::int64_t, std::int64_t>, double> out;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        const std::int64_t x1 = x01 + static_cast<std::int64_t>(i);
        const std::int64_t x2 = x01 + x02 + t - x1;
        out[{x1, x2}] = probs[i];
    }
    return out;
}

namespace {

void check_caps(const UrnParams& params, std::int64_t t, std::int64_t cap, const char* what) {
    params.validate();
    if (t < 0 || t > cap)
        throw std::invalid_argument(std::string(what) + ": time must be in [0, " +
                                    std::to_string(cap) + "]");
}

}  // namespace

ExactDistribution exact_state_distribution(const UrnParams& params, std::int64_t t) {
    check_caps(params, t, kMaxOracleTime, "exact_state_distribution");
    const auto tab = power_table(params.beta, params.total0() + t);

    std::vector<double> probs{1.0};  // probs[i] = P[X1 = x01 + i]
    for (std::int64_t s = 0; s < t; ++s) {
        std::vector<double> next(probs.size() + 1, 0.0);
        for (std::size_t i = 0; i < probs.size(); ++i) {
            if (probs[i] == 0.0) continue;
            const std::int64_t x1 = params.x01 + static_cast<std::int64_t>(i);
            const std::int64_t x2 = params.total0() + s - x1;
            const double w1 = params.r * tab[static_cast<std::size_t>(x1)];
            const double w2 = tab[static_cast<std::size_t>(x2)];
            const double p1 = w1 / (w1 + w2);
            next[i + 1] += probs[i] * p1;
            next[i] += probs[i] * (1.0 - p1);
        }
        probs.swap(next);
    }
    ExactDistribution out;
    out.t = t;
    out.x01 = params.x01;
    out.x02 = params.x02;
    out.probs = std::move(probs);
    return out;
}

std::vector<double> exact_tie_time_probabilities(const UrnParams& params,
                                                 std::int64_t horizon) {
    check_caps(params, horizon, kMaxOracleTime, "exact_tie_time_probabilities");
    const auto tab = power_table(params.beta, params.total0() + horizon);

    std::vector<double> tie_probs(static_cast<std::size_t>(horizon) + 1, 0.0);
    std::vector<double> probs{1.0};
    for (std::int64_t s = 0; s <= horizon; ++s) {
        const std::int64_t total = params.total0() + s;
        if (total % 2 == 0) {
            const std::int64_t x1 = total / 2;
            if (x1 >= params.x01 && total - x1 >= params.x02) {
                const std::int64_t i = x1 - params.x01;
                if (i >= 0 && i < static_cast<std::int64_t>(probs.size()))
                    tie_probs[static_cast<std::size_t>(s)] = probs[static_cast<std::size_t>(i)];
            }
        }
        if (s == horizon) break;
        std::vector<double> next(probs.size() + 1, 0.0);
        for (std::size_t i = 0; i < probs.size(); ++i) {
            if (probs[i] == 0.0) continue;
            const std::int64_t x1 = params.x01 + static_cast<std::int64_t>(i);
            const std::int64_t x2 = total - x1;
            const double w1 = params.r * tab[static_cast<std::size_t>(x1)];
            const double w2 = tab[static_cast<std::size_t>(x2)];
            const double p1 = w1 / (w1 + w2);
            next[i + 1] += probs[i] * p1;
            next[i] += probs[i] * (1.0 - p1);
        }
        probs.swap(next);
    }
    return tie_probs;
}

double ExactTailDistribution::ccdf(std::int64_t v) const {
    double sum = 0.0;
    for (const auto& [value, p] : pmf)
        if (value >= v) sum += p;
    return std::clamp(sum, 0.0, 1.0);  // accumulated roundoff must stay a probability
}

TailCurve ExactTailDistribution::to_tail_curve(std::span<const double> grid) const {
    TailCurve c;
    c.metric = metric;
    c.horizon = horizon;
    c.n_samples = 0;  // exact curve, no sampling noise
    const double cutoff = static_cast<double>(horizon) / 100.0;
    for (double g : grid) {
        c.grid.push_back(g);
        c.ccdf.push_back(ccdf(static_cast<std::int64_t>(std::ceil(g))));
        c.std_error.push_back(0.0);
        c.counts.push_back(0);
        c.trusted.push_back(g <= cutoff ? 1 : 0);
    }
    return c;
}

ExactTailDistribution exact_censored_tail(const UrnParams& params, std::int64_t horizon,
                                          Metric metric) {
    check_caps(params, horizon, kMaxAugmentedOracleTime, "exact_censored_tail");
    const auto tab = power_table(params.beta, params.total0() + horizon);

    // DP over (x1, aux) where aux = last tie so far (offset by 1; 0 = none)
    // for duration, or the tie count for intensity. x2 is implied.
    using Key = std::pair<std::int64_t, std::int64_t>;
    std::map<Key, double> dp;
    // a tie at t = 0 is last-tie 0 (stored offset by 1) and tie count 1
    const std::int64_t aux0 = params.x01 == params.x02 ? 1 : 0;
    dp[{params.x01, aux0}] = 1.0;

    for (std::int64_t s = 0; s < horizon; ++s) {
        std::map<Key, double> next;
        for (const auto& [key, p] : dp) {
            const auto [x1, aux] = key;
            const std::int64_t x2 = params.total0() + s - x1;
            const double w1 = params.r * tab[static_cast<std::size_t>(x1)];
            const double w2 = tab[static_cast<std::size_t>(x2)];
            const double p1 = w1 / (w1 + w2);
            for (int move = 0; move < 2; ++move) {
                const std::int64_t nx1 = x1 + (move == 0 ? 1 : 0);
                const std::int64_t nx2 = x2 + (move == 0 ? 0 : 1);
                const double q = move == 0 ? p1 : 1.0 - p1;
                std::int64_t naux = aux;
                if (nx1 == nx2)
                    naux = metric == Metric::duration ? s + 2 : aux + 1;  // tie at time s+1
                next[{nx1, naux}] += p * q;
            }
        }
        dp.swap(next);
    }

    ExactTailDistribution out;
    out.metric = metric;
    out.horizon = horizon;
    for (const auto& [key, p] : dp) {
        const std::int64_t aux = key.second;
        const std::int64_t value = metric == Metric::duration ? aux - 1 : aux;
        out.pmf[value] += p;
    }
    return out;
}

void write_distribution_csv(std::ostream& os, const ExactDistribution& dist) {
    os << "t,x1,x2,prob\n";
    char buf[128];
    for (std::size_t i = 0; i < dist.probs.size(); ++i) {
        const std::int64_t x1 = dist.x01 + static_cast<std::int64_t>(i);
        const std::int64_t x2 = dist.x01 + dist.x02 + dist.t - x1;
        std::snprintf(buf, sizeof(buf), "%lld,%lld,%lld,%.17g\n",
                      static_cast<long long>(dist.t), static_cast<long long>(x1),
                      static_cast<long long>(x2), dist.probs[i]);
        os << buf;
    }
}

}  // namespace urnlab
