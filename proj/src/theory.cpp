#include "urnlab/theory.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace urnlab {

double std_normal_ccdf(double z) {
    return 0.5 * std::erfc(z / std::numbers::sqrt2);
}

double scaled_imbalance(std::int64_t x1, std::int64_t x2) {
    const double total = static_cast<double>(x1 + x2);
    if (!(total > 0.0)) throw std::invalid_argument("scaled_imbalance: zero total");
    return static_cast<double>(x1 - x2) / std::sqrt(total);
}

FirstTieBounds first_tie_prob_bounds(std::int64_t x1, std::int64_t x2, double beta,
                                     double epsilon) {
    if (!(beta > 0.5))
        throw std::invalid_argument("first_tie_prob_bounds: requires beta > 1/2");
    if (!(epsilon > 0.0) || !(epsilon < 1.0))
        throw std::invalid_argument("first_tie_prob_bounds: epsilon must be in (0, 1)");
    const double rho = std::abs(scaled_imbalance(x1, x2));
    const double c1 = (1.0 - epsilon) * std::sqrt(2.0 * beta - 1.0);
    const double c2 = std::sqrt(2.0 * beta - 1.0);
    FirstTieBounds b;
    b.lower = 2.0 * std_normal_ccdf(c2 * rho);
    b.upper = std::min(1.0, 2.0 * std_normal_ccdf(c1 * rho));
    return b;
}

std::complex<double> clock_sum_cf(double s, double beta, std::int64_t x, std::int64_t y) {
    if (x < 1 && y > x) throw std::invalid_argument("clock_sum_cf: nonempty range needs x >= 1");
    double re = 1.0, im = 0.0;
    for (std::int64_t j = x; j < y; ++j) {
        // (1 - i a)^-1 = (1 + i a) / (1 + a^2)
        const double a = s / std::pow(static_cast<double>(j), beta);
        const double inv = 1.0 / (1.0 + a * a);
        const double fr = inv, fi = a * inv;
        const double t = re * fr - im * fi;
        im = re * fi + im * fr;
        re = t;
    }
    return {re, im};
}

namespace {

constexpr double kPi = std::numbers::pi;

/// sum_{j >= N} j^-a for a > 1, N >= 16 (Euler-Maclaurin through the B4 term).
double zeta_tail(double a, double n) {
    if (!(a > 1.0)) throw std::logic_error("zeta_tail: needs a > 1");
    const double inv = 1.0 / n;
    const double na = std::pow(n, -a);
    return n * na / (a - 1.0) + 0.5 * na + (a / 12.0) * na * inv -
           a * (a + 1.0) * (a + 2.0) / 720.0 * na * inv * inv * inv;
}

constexpr int kSeriesTerms = 12;

/// Evaluator of the limiting paired product
///   prod_{j>=x01} (1 - i s/j^beta)^-1 * prod_{j>=x02} (1 + i r s/j^beta)^-1
/// with explicit factors below J and a log-series tail over j >= J.
struct PairedCf {
    double beta, r;
    std::int64_t x01, x02, J;
    std::vector<double> jbeta;  // j^beta for j < J

    PairedCf(double beta_, double r_, std::int64_t x01_, std::int64_t x02_, std::int64_t J_)
        : beta(beta_), r(r_), x01(x01_), x02(x02_), J(J_) {
        jbeta.resize(static_cast<std::size_t>(J));
        for (std::int64_t j = 1; j < J; ++j)
            jbeta[static_cast<std::size_t>(j)] = std::pow(static_cast<double>(j), beta);
    }

    std::complex<double> operator()(double s) const {
        double re = 1.0, im = 0.0;
        for (std::int64_t j = x01; j < J; ++j) {
            const double a = s / jbeta[static_cast<std::size_t>(j)];
            const double inv = 1.0 / (1.0 + a * a);
            const double fr = inv, fi = a * inv;
            const double t = re * fr - im * fi;
            im = re * fi + im * fr;
            re = t;
        }
        for (std::int64_t j = x02; j < J; ++j) {
            const double b = r * s / jbeta[static_cast<std::size_t>(j)];
            const double inv = 1.0 / (1.0 + b * b);
            const double fr = inv, fi = -b * inv;
            const double t = re * fr - im * fi;
            im = re * fi + im * fr;
            re = t;
        }
        // log of the j >= J remainder:
        //   sum_k [ (is)^k + (-irs)^k ] / k * zeta_tail(k beta, J)
        // (odd terms vanish exactly when r = 1)
        std::complex<double> tail{0.0, 0.0};
        std::complex<double> p1{1.0, 0.0}, p2{1.0, 0.0};
        const std::complex<double> is{0.0, s}, mirs{0.0, -r * s};
        for (int k = 1; k <= kSeriesTerms; ++k) {
            p1 *= is;
            p2 *= mirs;
            const std::complex<double> coef = (p1 + p2) / static_cast<double>(k);
            if (std::norm(coef) == 0.0) continue;
            tail += coef * zeta_tail(k * beta, static_cast<double>(J));
        }
        return std::complex<double>(re, im) * std::exp(tail);
    }

    /// Bound on |dropped log-series remainder|, uniform over |s| <= s_max.
    double series_remainder_bound(double s_max) const {
        const double u = r * s_max / std::pow(static_cast<double>(J), beta);
        if (u >= 0.5) return std::numeric_limits<double>::infinity();
        const int k1 = kSeriesTerms + 1;
        const double a = k1 * beta;
        if (!(a > 1.0)) return std::numeric_limits<double>::infinity();
        // |coef_k| <= 2 (r s)^k and zeta_tail(k beta, J) <= 2 J^(1-k beta)/(k beta -1)
        const double lead =
            4.0 * static_cast<double>(J) / (k1 * (a - 1.0)) * std::pow(u, k1);
        return lead / (1.0 - u);
    }
};

/// Upper envelope of |paired product| built from a fixed window of factors;
/// monotone decreasing in s, valid for every s.
double envelope(double s, double beta, double r, std::int64_t x01, std::int64_t x02) {
    constexpr int kWindow = 48;
    double logv = 0.0;
    for (std::int64_t j = x01; j < x01 + kWindow; ++j) {
        const double jb = std::pow(static_cast<double>(j), beta);
        logv -= 0.5 * std::log1p(s * s / (jb * jb));
    }
    for (std::int64_t j = x02; j < x02 + kWindow; ++j) {
        const double jb = std::pow(static_cast<double>(j), beta);
        logv -= 0.5 * std::log1p(r * r * s * s / (jb * jb));
    }
    return std::exp(logv);
}

/// Bound on the dropped integral of the envelope over [S, inf).
double integral_tail_bound(double S, double beta, double r, std::int64_t x01,
                           std::int64_t x02) {
    const double e0 = envelope(S, beta, r, x01, x02);
    const double e1 = envelope(1.25 * S, beta, r, x01, x02);
    if (e0 <= 0.0) return 0.0;
    double p = (std::log(e0) - std::log(std::max(e1, 1e-300))) / std::log(1.25);
    p = std::max(p, 1.2);
    // envelope log-slope steepens with s, so the chord exponent bounds the decay
    return e0 * S * (0.25 + 1.25 / (p - 1.0));
}

template <class F>
void adaptive_simpson(const F& f, double a, double m, double b, double fa, double fm,
                      double fb, double whole, double tol, int depth, double& out,
                      double& err) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
        out += left + right + delta / 15.0;
        err += std::abs(delta) / 15.0;
        return;
    }
    adaptive_simpson(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth - 1, out, err);
    adaptive_simpson(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth - 1, out, err);
}

template <class F>
std::pair<double, double> integrate(const F& f, double a, double b, double tol) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    double out = 0.0, err = 0.0;
    adaptive_simpson(f, a, m, b, fa, fm, fb, whole, tol, 32, out, err);
    return {out, err};
}

}  // namespace

QuadratureResult k_constant(double beta, double r, std::int64_t x01, std::int64_t x02,
                            double tol, KTruncation truncation) {
    if (!(r >= 1.0)) throw std::invalid_argument("k_constant: r must be >= 1");
    if (!(beta > 1.0) && !(beta > 0.5 && r == 1.0))
        throw std::invalid_argument(
            "k_constant: defined for beta > 1, or beta > 1/2 with r = 1");
    if (x01 < 1 || x02 < 1) throw std::invalid_argument("k_constant: counts must be >= 1");
    if (!(tol > 0.0)) throw std::invalid_argument("k_constant: tol must be positive");

    const double budget = tol * kPi / 3.0;  // per error source, in integral units

    // integral truncation: grow S until the dropped envelope mass is certified small
    double S = truncation.integral > 0.0 ? truncation.integral : 2.0;
    if (truncation.integral <= 0.0) {
        while (integral_tail_bound(S, beta, r, x01, x02) > budget) {
            S *= 1.5;
            if (S > 1e7)
                throw std::runtime_error("k_constant: integral truncation did not converge");
        }
    }
    const double tail_int = integral_tail_bound(S, beta, r, x01, x02);

    // product truncation: grow J until the dropped log-series remainder is small
    std::int64_t J = truncation.product > 0
                         ? truncation.product
                         : std::max<std::int64_t>({x01 + 1, x02 + 1, 64});
    PairedCf cf(beta, r, x01, x02, J);
    if (truncation.product <= 0) {
        while (cf.series_remainder_bound(S) * 1.5 * S > budget) {
            J *= 2;
            if (J > (1LL << 26))
                throw std::runtime_error("k_constant: product truncation did not converge");
            cf = PairedCf(beta, r, x01, x02, J);
        }
    }
    const double series_err = cf.series_remainder_bound(S) * 1.5 * S;

    // conjugate symmetry folds the two-sided integral onto [0, S]
    const auto f = [&cf](double s) { return cf(s).real(); };
    double value = 0.0, quad_err = 0.0;
    // geometric panels keep the adaptive rule honest near the decaying tail
    std::vector<double> cuts{0.0};
    for (int k = 10; k >= 0; --k) cuts.push_back(S * std::pow(0.5, k));
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        auto [v, e] = integrate(f, cuts[i], cuts[i + 1], budget / 12.0);
        value += v;
        quad_err += e;
    }

    QuadratureResult out;
    out.value = value / kPi;
    out.abs_error_estimate = (quad_err + tail_int + series_err) / kPi;
    out.product_truncation = J;
    out.integral_truncation = S;
    if (!(out.abs_error_estimate <= tol))
        throw std::runtime_error("k_constant: could not certify the requested tolerance");
    return out;
}

double duration_asymptote(double beta, double r, std::int64_t x01, std::int64_t x02,
                          double t, std::optional<double> k_value) {
    const double k = k_value ? *k_value : k_constant(beta, r, x01, x02, 1e-6).value;
    if (r == 1.0) {
        if (!(beta > 0.5))
            throw std::invalid_argument("duration_asymptote: r = 1 needs beta > 1/2");
        // constant = 2^(beta+3/2) ((2 beta - 1) pi)^(-1/2): the tie-probability
        // limit 2^(beta+1) K t^-beta times the first-visit bracket 2 Phibar,
        // integrated over the sqrt(t)/2-per-sign diagonal state density; at
        // beta = 1 (K = 1/4) this closes to 2/sqrt(2 pi) t^-1/2 exactly
        return std::pow(2.0, beta + 1.5) / std::sqrt((2.0 * beta - 1.0) * kPi) * k *
               std::pow(t, 0.5 - beta);
    }
    if (!(beta > 1.0))
        throw std::invalid_argument("duration_asymptote: r > 1 needs beta > 1");
    return (r - 1.0) * std::pow(2.0, beta - 1.0) / (beta - 1.0) * k * std::pow(t, 1.0 - beta);
}

RegimePrediction predict_regime(double beta, double r, std::int64_t x01,
                                [[maybe_unused]] std::int64_t x02) {
    if (!(beta >= 0.0) || !(r >= 1.0))
        throw std::invalid_argument("predict_regime: needs beta >= 0 and r >= 1");
    RegimePrediction out;
    if (r == 1.0) {
        if (beta <= 0.5) {
            out.duration = AlwaysInfinite{};
            out.intensity = AlwaysInfinite{};
        } else {
            out.duration = PowerLaw{0.5 - beta};
            if (beta < 1.0)
                out.intensity = PowerLawBounds{-beta, 0.5 - beta};
            else if (beta == 1.0)
                out.intensity = PowerLawBounds{-1.0, -1.0};
            else
                out.intensity = PowerLawBounds{std::nullopt, -beta};
        }
    } else {
        if (beta < 1.0) {
            const double rate = (1.0 - r) / (1.0 - beta) * std::pow(2.0, beta - 1.0) *
                                std::pow(static_cast<double>(x01), beta);
            out.duration = WeibullUpper{rate, 1.0 - beta};
        } else if (beta == 1.0) {
            out.duration = PowerLawRange{(1.0 - r) * static_cast<double>(x01),
                                         (1.0 - r) * (static_cast<double>(x01) - 1.0 / r)};
        } else {
            out.duration = PowerLaw{1.0 - beta};
        }
        out.intensity = ExponentialTail{std::log(2.0 / (r + 1.0))};
    }
    return out;
}

namespace {

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

}  // namespace

std::string describe(const DurationLaw& law) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, AlwaysInfinite>)
                return "never-ends";
            else if constexpr (std::is_same_v<T, PowerLaw>)
                return "power-law exponent " + fmt(v.exponent);
            else if constexpr (std::is_same_v<T, PowerLawRange>)
                return "power-law exponent in [" + fmt(v.lo) + ", " + fmt(v.hi) + "]";
            else
                return "weibull upper bound rate " + fmt(v.rate) + " shape " + fmt(v.shape);
        },
        law);
}

std::string describe(const IntensityLaw& law) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, AlwaysInfinite>) {
                return "never-ends";
            } else if constexpr (std::is_same_v<T, PowerLawBounds>) {
                std::string lo = v.lower ? fmt(*v.lower) : "unknown";
                std::string hi = v.upper ? fmt(*v.upper) : "unknown";
                return "power-law exponent in [" + lo + ", " + hi + "]";
            } else {
                return "exponential rate " + fmt(v.rate);
            }
        },
        law);
}

double no_return_prob(double r) {
    if (!(r >= 1.0)) throw std::invalid_argument("no_return_prob: r must be >= 1");
    return (r - 1.0) / (r + 1.0);
}

double intensity_upper_bound(const UrnParams& params, std::int64_t n) {
    params.validate();
    if (!(params.r > 1.0)) throw std::invalid_argument("intensity_upper_bound: needs r > 1");
    if (n < 1) throw std::invalid_argument("intensity_upper_bound: needs n >= 1");
    const double dplus = static_cast<double>(std::max<std::int64_t>(params.x01 - params.x02, 0));
    return std::pow(params.r, -dplus) *
           std::pow(2.0 / (params.r + 1.0), static_cast<double>(n - 1));
}

double rw_nth_visit_pmf(std::int64_t n, std::int64_t d0, std::int64_t ell) {
    if (n < 1 || d0 < 0 || ell < n - 1)
        throw std::invalid_argument("rw_nth_visit_pmf: needs n >= 1, d0 >= 0, ell >= n-1");
    const std::int64_t target = d0 + 2 * ell;

    std::int64_t visits0 = 0;
    if (d0 == 0) {
        if (n == 1) return target == 0 ? 1.0 : 0.0;  // the walk starts on a visit
        visits0 = 1;
    }

    // dp[v][pos] over positions in [-target, d0 + target], absorbing at visit n
    const std::int64_t width = d0 + 2 * target + 1;
    const std::int64_t offset = target;
    const auto idx = [&](std::int64_t v, std::int64_t pos) {
        return static_cast<std::size_t>(v * width + pos + offset);
    };
    std::vector<double> dp(static_cast<std::size_t>(n * width), 0.0);
    std::vector<double> next(dp.size());
    dp[idx(visits0, d0)] = 1.0;

    double absorbed_at_target = 0.0;
    for (std::int64_t t = 0; t < target; ++t) {
        std::fill(next.begin(), next.end(), 0.0);
        for (std::int64_t v = 0; v < n; ++v) {
            for (std::int64_t pos = -t - 1; pos <= d0 + t; ++pos) {
                const double mass = dp[idx(v, pos)];
                if (mass == 0.0) continue;
                for (int step = -1; step <= 1; step += 2) {
                    const std::int64_t npos = pos + step;
                    if (npos == 0) {
                        if (v + 1 == n) {
                            if (t + 1 == target) absorbed_at_target += 0.5 * mass;
                        } else {
                            next[idx(v + 1, npos)] += 0.5 * mass;
                        }
                    } else {
                        next[idx(v, npos)] += 0.5 * mass;
                    }
                }
            }
        }
        dp.swap(next);
    }
    return absorbed_at_target;
}

double intensity_walk_sum(double beta, std::int64_t x01, std::int64_t x02, std::int64_t n,
                          double rel_tol) {
    if (!(beta > 0.5 && beta <= 1.0))
        throw std::invalid_argument("intensity_walk_sum: beta must be in (1/2, 1]");
    if (x02 < 1 || x01 < x02)
        throw std::invalid_argument("intensity_walk_sum: requires x01 >= x02 >= 1");
    if (n < 1) throw std::invalid_argument("intensity_walk_sum: n must be >= 1");
    if (!(rel_tol > 0.0 && rel_tol < 1.0))
        throw std::invalid_argument("intensity_walk_sum: rel_tol must be in (0, 1)");

    const std::int64_t d0 = x01 - x02;
    const std::int64_t m = n + d0 - 1;
    const double ln2 = std::numbers::ln2;
    const double log_b0 = std::lgamma(static_cast<double>(x01)) +
                          std::lgamma(static_cast<double>(x02)) -
                          std::lgamma(static_cast<double>(x01 + x02));
    const auto log_bracket = [&](std::int64_t ell) {
        const double a = static_cast<double>(x01 + ell);
        return beta * (2.0 * std::lgamma(a) - std::lgamma(2.0 * a) - log_b0 +
                       (static_cast<double>(d0) + 2.0 * static_cast<double>(ell)) * ln2);
    };

    if (m == 0) return std::exp(log_bracket(0));  // n = 1 from a tie: visit at time 0

    std::int64_t ell = n - 1;
    double log_term = log_bracket(ell) - static_cast<double>(m) * ln2;  // pmf 2^-m at k = m
    double sum = std::exp(log_term);

    std::int64_t cp_ell = ell;
    double cp_log = log_term;
    constexpr std::int64_t kCheckEvery = 256;
    constexpr std::int64_t kMaxTerms = 400'000'000;

    for (std::int64_t it = 0; it < kMaxTerms; ++it) {
        const double a = static_cast<double>(x01 + ell);
        const double k = static_cast<double>(ell + d0);
        const double md = static_cast<double>(m);
        log_term += beta * std::log(2.0 * a / (2.0 * a + 1.0)) +
                    std::log((2.0 * k - md) * (2.0 * k - md + 1.0) /
                             (4.0 * (k + 1.0) * (k - md + 1.0)));
        ++ell;
        sum += std::exp(log_term);

        if ((it + 1) % kCheckEvery == 0) {
            if (log_term < cp_log) {  // past the mode, polynomial decay regime
                const double p = -(log_term - cp_log) /
                                 (std::log(static_cast<double>(ell)) -
                                  std::log(static_cast<double>(cp_ell)));
                if (p > 1.05) {
                    const double tail =
                        2.0 * std::exp(log_term) * static_cast<double>(ell) / (p - 1.0);
                    if (tail < rel_tol * sum) return sum;
                }
            }
            cp_ell = ell;
            cp_log = log_term;
        }
    }
    throw std::runtime_error("intensity_walk_sum: truncation did not converge");
}

}  // namespace urnlab
