#include "collapse/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>

namespace collapse {
namespace stats {

MeanStderr mean_stderr(const std::vector<double>& xs) {
    if (xs.size() < 2) throw std::invalid_argument("mean_stderr needs at least 2 samples");
    double sum = 0.0;
    for (double x : xs) sum += x;
    const double mean = sum / static_cast<double>(xs.size());
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    MeanStderr m;
    m.mean = mean;
    m.stderr_ = std::sqrt(ss / (static_cast<double>(xs.size() - 1) * xs.size()));
    return m;
}

double ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf) {
    if (sample.empty()) throw std::invalid_argument("empty sample");
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double f = cdf(sample[i]);
        d = std::max(d, std::abs(f - static_cast<double>(i) / n));
        d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
    }
    return d;
}

double ks_pvalue(double d_stat, std::size_t n) {
    const double sqrt_n = std::sqrt(static_cast<double>(n));
    const double lambda = (sqrt_n + 0.12 + 0.11 / sqrt_n) * d_stat;
    double sum = 0.0;
    for (int j = 1; j <= 100; ++j) {
        const double term = std::exp(-2.0 * j * j * lambda * lambda);
        sum += (j % 2 == 1 ? term : -term);
        if (term < 1e-16) break;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

double chi_square_pvalue(double chi2, double df) {
    return boost::math::gamma_q(0.5 * df, 0.5 * chi2);
}

double maxwell_cdf(double p, double scale) {
    if (p <= 0.0) return 0.0;
    const double x = p / scale;
    return std::erf(x / std::sqrt(2.0)) - std::sqrt(2.0 / M_PI) * x * std::exp(-0.5 * x * x);
}

}  // namespace stats
}  // namespace collapse
