#include "collapse/params.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace collapse {

const char* to_string(Model model) {
    return model == Model::DP ? "dp" : "csl";
}

Model model_from_string(const std::string& name) {
    if (name == "dp" || name == "DP") return Model::DP;
    if (name == "csl" || name == "CSL") return Model::CSL;
    throw std::invalid_argument("unknown model '" + name + "' (expected dp or csl)");
}

void ModelParams::validate() const {
    if (!std::isfinite(sigma) || sigma <= 0.0)
        throw std::invalid_argument("sigma must be finite and > 0");
    if (!std::isfinite(mass) || mass <= 0.0)
        throw std::invalid_argument("mass must be finite and > 0");
    if (!std::isfinite(beta) || beta < 0.0)
        throw std::invalid_argument("beta must be finite and >= 0");
    if (model == Model::CSL && (!std::isfinite(gamma_csl) || gamma_csl <= 0.0))
        throw std::invalid_argument("gamma_csl must be finite and > 0 for the CSL model");
}

double ModelParams::lambda_csl(const PhysicalConstants& pc) const {
    if (model != Model::CSL)
        throw std::logic_error("lambda_csl is defined only for the CSL model");
    const double denom = std::pow(std::sqrt(4.0 * M_PI) * sigma, 3);
    return gamma_csl * pc.m0 * pc.m0 / denom;
}

double ModelParams::t_beta(const PhysicalConstants& pc) const {
    if (beta == 0.0) return std::numeric_limits<double>::infinity();
    return 1.0 / (pc.kB * beta);
}

UnitSystem UnitSystem::make(const ModelParams& p, const PhysicalConstants& pc) {
    p.validate();
    UnitSystem u{};
    u.mass_unit = p.mass;
    u.length_unit = p.sigma;
    u.time_unit = p.mass * p.sigma * p.sigma / pc.hbar;
    u.energy_unit = pc.hbar * pc.hbar / (p.mass * p.sigma * p.sigma);
    u.momentum_unit = pc.hbar / p.sigma;
    return u;
}

void WorkingParams::validate() const {
    if (!std::isfinite(coupling) || coupling < 0.0)
        throw std::invalid_argument("working coupling must be finite and >= 0");
    if (!std::isfinite(beta) || beta < 0.0)
        throw std::invalid_argument("beta must be finite and >= 0");
}

WorkingParams WorkingParams::from_si(const ModelParams& p, const PhysicalConstants& pc) {
    p.validate();
    WorkingParams w;
    w.model = p.model;
    w.beta = UnitSystem::make(p, pc).beta_to_working(p.beta);
    const double m3 = p.mass * p.mass * p.mass;
    if (p.model == Model::DP)
        w.coupling = pc.G * m3 * p.sigma / (pc.hbar * pc.hbar);
    else
        w.coupling = p.gamma_csl * m3 / (pc.hbar * p.sigma);
    return w;
}

DimensionlessParams nondimensionalize(const ModelParams& p, const PhysicalConstants& pc) {
    p.validate();
    DimensionlessParams d;
    d.e_sigma = pc.hbar * pc.hbar / (4.0 * p.mass * p.sigma * p.sigma);
    d.x_beta_sq = 2.0 * p.beta * d.e_sigma;
    if (p.model == Model::DP) {
        d.rate_scale = p.mass * p.mass * pc.G / (std::sqrt(M_PI) * pc.hbar * p.sigma);
    } else {
        d.rate_scale =
            p.mass * p.mass * p.gamma_csl / (8.0 * std::pow(M_PI, 1.5) * std::pow(p.sigma, 3));
    }
    return d;
}

ModelParams redimensionalize(const DimensionlessParams& d, Model model, double mass,
                             const PhysicalConstants& pc) {
    if (!(d.e_sigma > 0.0) || !std::isfinite(d.e_sigma))
        throw std::invalid_argument("e_sigma must be finite and > 0");
    ModelParams p;
    p.model = model;
    p.mass = mass;
    p.sigma = pc.hbar / (2.0 * std::sqrt(mass * d.e_sigma));
    p.beta = d.x_beta_sq / (2.0 * d.e_sigma);
    if (model == Model::CSL) {
        p.gamma_csl =
            d.rate_scale * 8.0 * std::pow(M_PI, 1.5) * std::pow(p.sigma, 3) / (mass * mass);
    }
    return p;
}

}  // namespace collapse
