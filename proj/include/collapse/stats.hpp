#pragma once

#include <functional>
#include <vector>

namespace collapse {
namespace stats {

struct MeanStderr {
    double mean = 0.0;
    double stderr_ = 0.0;
};

MeanStderr mean_stderr(const std::vector<double>& xs);

/// One-sample Kolmogorov-Smirnov statistic against a continuous CDF.
/// Sorts a copy of the sample.
double ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf);

/// Asymptotic KS p-value with the Stephens small-sample correction.
double ks_pvalue(double d_stat, std::size_t n);

/// Upper tail of the chi-square distribution, p = Q(df/2, chi2/2).
double chi_square_pvalue(double chi2, double df);

/// CDF of the Maxwell speed distribution for momentum magnitude with scale
/// a = sqrt(m/beta): F(p) = erf(p/(a sqrt(2))) - sqrt(2/pi) (p/a) exp(-p^2/(2a^2)).
double maxwell_cdf(double p, double scale);

}  // namespace stats
}  // namespace collapse
