#include "urnlab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace urnlab {

namespace {

// Lower regularized incomplete gamma by series: P(a, x), x < a + 1.
double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double term = sum;
    for (int i = 0; i < 1000; ++i) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::abs(term) < std::abs(sum) * 1e-16)
            return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
    throw std::runtime_error("gamma_p_series: no convergence");
}

// Upper regularized incomplete gamma by Lentz continued fraction, x >= a + 1.
double gamma_q_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 1000; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16)
            return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
    throw std::runtime_error("gamma_q_cf: no convergence");
}

}  // namespace

double gamma_q(double a, double x) {
    if (!(a > 0.0) || x < 0.0) throw std::invalid_argument("gamma_q: needs a > 0, x >= 0");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_cf(a, x);
}

double chi2_ccdf(double statistic, int df) {
    if (df < 1) throw std::invalid_argument("chi2_ccdf: df must be >= 1");
    return gamma_q(0.5 * df, 0.5 * statistic);
}

Chi2Result chi2_goodness_of_fit(std::span<const double> expected_probs,
                                std::span<const std::int64_t> observed_counts,
                                double min_expected) {
    if (expected_probs.size() != observed_counts.size() || expected_probs.empty())
        throw std::invalid_argument("chi2_goodness_of_fit: size mismatch");
    std::int64_t n = 0;
    for (auto c : observed_counts) n += c;
    if (n <= 0) throw std::invalid_argument("chi2_goodness_of_fit: no observations");

    // pool adjacent cells until each expected count reaches min_expected
    std::vector<double> exp_pooled;
    std::vector<double> obs_pooled;
    double e_acc = 0.0, o_acc = 0.0;
    for (std::size_t i = 0; i < expected_probs.size(); ++i) {
        e_acc += expected_probs[i] * static_cast<double>(n);
        o_acc += static_cast<double>(observed_counts[i]);
        if (e_acc >= min_expected) {
            exp_pooled.push_back(e_acc);
            obs_pooled.push_back(o_acc);
            e_acc = o_acc = 0.0;
        }
    }
    if (e_acc > 0.0 || o_acc > 0.0) {
        if (exp_pooled.empty()) {
            exp_pooled.push_back(e_acc);
            obs_pooled.push_back(o_acc);
        } else {
            exp_pooled.back() += e_acc;
            obs_pooled.back() += o_acc;
        }
    }
    if (exp_pooled.size() < 2)
        throw std::invalid_argument("chi2_goodness_of_fit: fewer than 2 cells after pooling");

    double stat = 0.0;
    for (std::size_t i = 0; i < exp_pooled.size(); ++i) {
        const double d = obs_pooled[i] - exp_pooled[i];
        stat += d * d / exp_pooled[i];
    }
    Chi2Result out;
    out.statistic = stat;
    out.df = static_cast<int>(exp_pooled.size()) - 1;
    out.bins_used = static_cast<int>(exp_pooled.size());
    out.p_value = chi2_ccdf(stat, out.df);
    return out;
}

double ks_two_sample_pvalue(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty())
        throw std::invalid_argument("ks_two_sample_pvalue: empty sample");
    std::vector<double> sa(a.begin(), a.end());
    std::vector<double> sb(b.begin(), b.end());
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());

    const double na = static_cast<double>(sa.size());
    const double nb = static_cast<double>(sb.size());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < sa.size() && j < sb.size()) {
        const double v = std::min(sa[i], sb[j]);
        while (i < sa.size() && sa[i] <= v) ++i;
        while (j < sb.size() && sb[j] <= v) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }

    const double ne = std::sqrt(na * nb / (na + nb));
    const double lambda = (ne + 0.12 + 0.11 / ne) * d;
    if (lambda < 0.2) return 1.0;  // series is ill-behaved at tiny lambda; Q ~ 1 there
    double p = 0.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = 2.0 * (k % 2 == 1 ? 1.0 : -1.0) *
                            std::exp(-2.0 * lambda * lambda * k * k);
        p += term;
        if (std::abs(term) < 1e-12) break;
    }
    return std::clamp(p, 0.0, 1.0);
}

double total_variation(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size()) throw std::invalid_argument("total_variation: size mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
    return 0.5 * s;
}

}  // namespace urnlab
