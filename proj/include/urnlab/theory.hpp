#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include "urnlab/params.hpp"

namespace urnlab {

/// CCDF of the standard normal, accurate to ~1 ulp via erfc.
double std_normal_ccdf(double z);

/// (x1 - x2) / sqrt(x1 + x2): the imbalance on the diffusive scale.
double scaled_imbalance(std::int64_t x1, std::int64_t x2);

/// Asymptotic Gaussian bracket for the probability that two colors started at
/// (x1, x2) ever tie, equal fitness, beta > 1/2:
///   lower = 2*Phibar(sqrt(2 beta - 1) * |rho|)
///   upper = 2*Phibar((1 - epsilon) * sqrt(2 beta - 1) * |rho|)
/// Both hold only up to O(|x|^(-beta)) corrections; callers supply their own
/// slack for that term.
struct FirstTieBounds {
    double lower = 0.0;
    double upper = 0.0;
};

FirstTieBounds first_tie_prob_bounds(std::int64_t x1, std::int64_t x2, double beta,
                                     double epsilon);

/// Characteristic function of the clock partial sum over counts [x, y) at unit
/// fitness: prod_{j=x}^{y-1} (1 - i s / j^beta)^{-1}. Empty range gives 1.
std::complex<double> clock_sum_cf(double s, double beta, std::int64_t x, std::int64_t y);

struct QuadratureResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    std::int64_t product_truncation = 0;  // J: explicit factors stop here
    double integral_truncation = 0.0;     // S: integration stops here
};

/// Optional manual truncations (0 = choose automatically); used by the
/// doubled-truncation stability checks.
struct KTruncation {
    std::int64_t product = 0;
    double integral = 0.0;
};

/// The positive constant (1/2pi) * integral of the limiting paired clock
/// characteristic function; defined for beta > 1 (any r >= 1) and for
/// beta > 1/2 with r = 1. Explicit factors run to J; the remaining tail enters
/// through certified log-series corrections, and conjugate symmetry folds the
/// integral onto [0, S]. abs_error_estimate combines quadrature, factor-tail
/// and integral-tail bounds and is kept <= tol (throws otherwise).
QuadratureResult k_constant(double beta, double r, std::int64_t x01, std::int64_t x02,
                            double tol, KTruncation truncation = {});

/// Right-hand side of the duration tail law:
///   r = 1, beta > 1/2 :  2^(beta-1/2) ((2 beta - 1) pi)^(-1/2) K t^(1/2-beta)
///   r > 1, beta > 1   :  (r-1) 2^(beta-1) (beta-1)^(-1) K t^(1-beta)
/// k_value, when given, skips the internal quadrature (tol 1e-6).
double duration_asymptote(double beta, double r, std::int64_t x01, std::int64_t x02,
                          double t, std::optional<double> k_value = std::nullopt);

// --- Regime classification ------------------------------------------------

struct AlwaysInfinite {};                       // competition never ends
struct PowerLaw { double exponent; };           // ccdf ~ t^exponent
struct PowerLawRange { double lo, hi; };        // exponent within [lo, hi]
struct WeibullUpper { double rate, shape; };    // log ccdf <= rate * t^shape
struct PowerLawBounds {                         // lower/upper power-law exponents
    std::optional<double> lower;
    std::optional<double> upper;
};
struct ExponentialTail { double rate; };        // log ccdf ~ rate * n, rate < 0

using DurationLaw = std::variant<AlwaysInfinite, PowerLaw, PowerLawRange, WeibullUpper>;
using IntensityLaw = std::variant<AlwaysInfinite, PowerLawBounds, ExponentialTail>;

/// One cell of the duration/intensity tail table for given (beta, r, x0).
struct RegimePrediction {
    DurationLaw duration;
    IntensityLaw intensity;
};

/// Total over beta >= 0, r >= 1; every input maps to exactly one cell.
RegimePrediction predict_regime(double beta, double r, std::int64_t x01, std::int64_t x02);

std::string describe(const DurationLaw& law);
std::string describe(const IntensityLaw& law);

/// Probability that a competition at a fresh large tie never ties again:
/// (r - 1) / (r + 1).
double no_return_prob(double r);

/// r^(-(x01-x02)^+) * (2/(r+1))^(n-1), the exact intensity tail bound for
/// r > 1; independent of beta. Requires n >= 1.
double intensity_upper_bound(const UrnParams& params, std::int64_t n);

/// P[ n-th visit to the origin of a symmetric +-1 walk started at d0 happens
/// at time d0 + 2*ell ], by dynamic programming over (time, position) with
/// visit counting. Requires n >= 1, d0 >= 0, ell >= n-1.
double rw_nth_visit_pmf(std::int64_t n, std::int64_t d0, std::int64_t ell);

/// The weighted visit sum controlling the equal-fitness intensity tail for
/// beta in (1/2, 1]:
///   sum_{ell >= n-1} [ B(x01+ell, x01+ell)/B(x01, x02) * 2^(d0+2 ell) ]^beta
///                    * P[n-th origin visit from d0 at time d0 + 2 ell]
/// with d0 = x01 - x02 >= 0. Exact beta-ratio factors, all in log space;
/// truncated when the running tail estimate drops below rel_tol of the sum.
double intensity_walk_sum(double beta, std::int64_t x01, std::int64_t x02,
                          std::int64_t n, double rel_tol = 1e-4);

}  // namespace urnlab
