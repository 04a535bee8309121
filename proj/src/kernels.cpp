#include "collapse/kernels.hpp"

#include <cmath>
#include <stdexcept>

#include "collapse/quadrature.hpp"

namespace collapse {

double kernel_value(Model model, double k, const ModelParams& p, const PhysicalConstants& pc) {
    p.validate();
    if (k < 0.0 || !std::isfinite(k)) throw std::invalid_argument("k must be finite and >= 0");
    const double gauss = std::exp(-p.sigma * p.sigma * k * k);
    if (model == Model::DP) {
        if (k == 0.0)
            throw std::domain_error(
                "DP kernel is singular at k = 0; use the measure-weighted form k^2 D_k");
        return gauss * 4.0 * M_PI * pc.hbar * pc.G / (k * k);
    }
    return gauss * pc.hbar * pc.hbar * p.gamma_csl;
}

double measure_weighted_kernel(Model model, double u) {
    const double gauss = std::exp(-u * u);
    return model == Model::DP ? 4.0 * M_PI * gauss : u * u * gauss;
}

double kernel_curvature_at_origin(const ModelParams& p, const PhysicalConstants& pc) {
    p.validate();
    const double s3 = std::pow(p.sigma, 3);
    if (p.model == Model::DP) return pc.hbar * pc.G / (2.0 * std::sqrt(M_PI) * s3);
    return 3.0 * pc.hbar * pc.hbar * p.gamma_csl /
           (16.0 * std::pow(M_PI, 1.5) * s3 * p.sigma * p.sigma);
}

double dp_to_csl_mapping_residual(const ModelParams& params_dp, double gamma,
                                  const PhysicalConstants& pc, int n_grid) {
    params_dp.validate();
    if (n_grid < 2) throw std::invalid_argument("n_grid must be >= 2");

    ModelParams csl = params_dp;
    csl.model = Model::CSL;
    csl.gamma_csl = gamma;

    const double map_const = -pc.hbar * gamma / (4.0 * M_PI * pc.G);
    double worst = 0.0;
    for (int i = 1; i <= n_grid; ++i) {
        const double k = 6.0 / params_dp.sigma * static_cast<double>(i) / n_grid;
        auto dp_at = [&](double sigma) {
            ModelParams q = params_dp;
            q.sigma = sigma;
            return kernel_value(Model::DP, k, q, pc);
        };
        const double numeric = map_const * sigma_sq_derivative(dp_at, params_dp.sigma);
        const double exact = kernel_value(Model::CSL, k, csl, pc);
        if (exact == 0.0)
            throw NumericError("mapping residual: CSL kernel underflowed at k = " +
                               std::to_string(k));
        worst = std::max(worst, std::abs(numeric - exact) / std::abs(exact));
    }
    return worst;
}

}  // namespace collapse
