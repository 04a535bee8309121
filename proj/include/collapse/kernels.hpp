#pragma once

#include <cmath>
#include <vector>

#include "collapse/params.hpp"

namespace collapse {

struct KernelSample {
    double k = 0.0;      // wavenumber magnitude [1/m]
    double value = 0.0;  // kernel value
    Model model = Model::DP;
};

/// Fourier-space decoherence kernel, SI units:
///   DP : D_k = exp(-sigma^2 k^2) 4 pi hbar G / k^2
///   CSL: D_k = exp(-sigma^2 k^2) hbar^2 gamma
/// The DP kernel is singular at k = 0; consumers integrate the
/// measure-weighted combination k^2 D_k, which is finite everywhere.
double kernel_value(Model model, double k, const ModelParams& p, const PhysicalConstants& pc);

/// Measure-weighted kernel k^2 D_k in working units with the coupling
/// factored out: 4 pi exp(-u^2) for DP, u^2 exp(-u^2) for CSL (u = sigma k).
double measure_weighted_kernel(Model model, double u);

/// -laplacian D(r) at r = 0, i.e. int d^3k/(2 pi)^3 k^2 D_k, such that the
/// beta = 0 heating power is P0 = (m/2) * result.
/// Closed forms: hbar G / (2 sqrt(pi) sigma^3) for DP,
///               3 hbar^2 gamma / (16 pi^(3/2) sigma^5) for CSL.
double kernel_curvature_at_origin(const ModelParams& p, const PhysicalConstants& pc);

/// Checks D_CSL,k = -(hbar gamma / 4 pi G) d D_DP,k / d(sigma^2) by central
/// finite differences with Richardson extrapolation (h = 1e-5 sigma^2).
/// Returns the max relative residual over a k grid in (0, 6/sigma].
double dp_to_csl_mapping_residual(const ModelParams& params_dp, double gamma,
                                  const PhysicalConstants& pc, int n_grid = 64);

/// Finite-difference sigma^2 derivative of a scalar function f(sigma), with
/// Richardson extrapolation. Used for the DP -> CSL mapping checks on
/// integrated quantities (P, Gamma).
template <class F>
double sigma_sq_derivative(F&& f, double sigma) {
    const double s2 = sigma * sigma;
    const double h = 1e-5 * s2;
    auto central = [&](double step) {
        const double hi = std::sqrt(s2 + step);
        const double lo = std::sqrt(s2 - step);
        return (f(hi) - f(lo)) / (2.0 * step);
    };
    const double d1 = central(h);
    const double d2 = central(0.5 * h);
    return (4.0 * d2 - d1) / 3.0;
}

}  // namespace collapse
