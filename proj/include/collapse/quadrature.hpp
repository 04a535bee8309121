#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace collapse {

struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace quad {

/// Half-line Gaussian moment H(n) = int_0^inf u^n exp(-u^2) du.
/// H(0) = sqrt(pi)/2, H(1) = 1/2, H(n) = (n-1)/2 * H(n-2).
inline double gaussian_half_moment(int n) {
    if (n < 0) throw std::invalid_argument("gaussian_half_moment: n < 0");
    double h = (n % 2 == 0) ? 0.5 * std::sqrt(M_PI) : 0.5;
    for (int m = 2 + (n % 2); m <= n; m += 2) h *= 0.5 * (m - 1);
    return h;
}

/// Partial moment M(n, K) = int_0^K u^n exp(-u^2) du.
/// M(0) = sqrt(pi)/2 erf(K), M(1) = (1 - exp(-K^2))/2,
/// M(n) = (n-1)/2 M(n-2) - K^(n-1) exp(-K^2)/2.
inline double gaussian_partial_moment(int n, double upper) {
    if (n < 0) throw std::invalid_argument("gaussian_partial_moment: n < 0");
    const double e = std::exp(-upper * upper);
    if (n == 0) return 0.5 * std::sqrt(M_PI) * std::erf(upper);
    if (n == 1) return 0.5 * (1.0 - e);
    return 0.5 * (n - 1) * gaussian_partial_moment(n - 2, upper) -
           0.5 * std::pow(upper, n - 1) * e;
}

/// Adaptive Gauss-Kronrod integration of a Gaussian-tailed integrand over
/// [0, upper]. Throws NumericError if the error estimate fails the target.
template <class F>
double integrate(F&& f, double upper, double rel_tol, const std::string& what) {
    using gk = boost::math::quadrature::gauss_kronrod<double, 31>;
    double err = 0.0;
    const double value = gk::integrate(f, 0.0, upper, 15, rel_tol, &err);
    const double scale = std::max(std::abs(value), 1e-300);
    if (!std::isfinite(value) || err / scale > 100.0 * rel_tol + 1e-14)
        throw NumericError("quadrature failed to converge in " + what + ": value=" +
                           std::to_string(value) + " abs_err=" + std::to_string(err));
    return value;
}

}  // namespace quad
}  // namespace collapse
