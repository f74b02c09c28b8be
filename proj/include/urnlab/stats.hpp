#pragma once

#include <cstdint>
#include <span>
#include <string>

namespace urnlab {

/// Regularized upper incomplete gamma Q(a, x) = Gamma(a, x)/Gamma(a), a > 0.
double gamma_q(double a, double x);

/// Upper tail of the chi-square distribution with df degrees of freedom.
double chi2_ccdf(double statistic, int df);

struct Chi2Result {
    double statistic = 0.0;
    int df = 0;
    double p_value = 1.0;
    int bins_used = 0;
};

/// Pearson goodness-of-fit of observed counts against expected probabilities.
/// Adjacent cells are pooled until each expected count reaches min_expected
/// (Cochran's rule); a trailing remainder joins the last pooled cell.
Chi2Result chi2_goodness_of_fit(std::span<const double> expected_probs,
                                std::span<const std::int64_t> observed_counts,
                                double min_expected = 5.0);

/// Asymptotic two-sample Kolmogorov-Smirnov p-value.
double ks_two_sample_pvalue(std::span<const double> a, std::span<const double> b);

/// Total variation distance between two discrete distributions given as
/// aligned probability vectors.
double total_variation(std::span<const double> p, std::span<const double> q);

}  // namespace urnlab
