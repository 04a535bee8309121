#include "collapse/rates.hpp"

#include <cmath>

#include "collapse/kernels.hpp"
#include "collapse/quadrature.hpp"

namespace collapse {

namespace {

constexpr double kCriticalTolFactor = 1e-12;

Regime classify(double gamma, double beta, double p0) {
    const double tol = kCriticalTolFactor * beta * p0;
    if (gamma > tol) return Regime::dissipative;
    if (gamma < -tol) return Regime::heating;
    return Regime::critical;
}

RateReport finish_report(const WorkingParams& wp, double P, double Gamma) {
    RateReport r;
    r.model = wp.model;
    r.sigma = 1.0;
    r.beta = wp.beta;
    r.x_beta_sq = wp.x_beta_sq();
    r.P = P;
    r.Gamma = Gamma;
    r.eta = friction_rate(wp);
    r.regime = classify(Gamma, wp.beta, beta0_power(wp));
    if (r.regime == Regime::dissipative) {
        r.E_inf = P / Gamma;
        r.T_noise = (2.0 / 3.0) * *r.E_inf;
    }
    r.working_units = true;
    return r;
}

RateReport to_si(const RateReport& w, const ModelParams& p, const PhysicalConstants& pc) {
    const UnitSystem u = UnitSystem::make(p, pc);
    RateReport r = w;
    r.sigma = p.sigma;
    r.beta = p.beta;
    r.P = u.power_to_si(w.P);
    r.Gamma = u.rate_to_si(w.Gamma);
    r.eta = u.rate_to_si(w.eta);
    if (w.E_inf) {
        r.E_inf = u.energy_to_si(*w.E_inf);
        r.T_noise = (2.0 / 3.0) * *r.E_inf / pc.kB;
    }
    r.working_units = false;
    return r;
}

}  // namespace

const char* to_string(Regime regime) {
    switch (regime) {
        case Regime::dissipative: return "dissipative";
        case Regime::critical: return "critical";
        default: return "heating";
    }
}

void EnvironmentParams::validate() const {
    if (!std::isfinite(T_env) || T_env < 0.0)
        throw std::invalid_argument("T_env must be finite and >= 0");
    if (!std::isfinite(Gamma_env) || Gamma_env < 0.0)
        throw std::invalid_argument("Gamma_env must be finite and >= 0");
}

double beta0_power(const WorkingParams& wp) {
    wp.validate();
    if (wp.model == Model::DP) return wp.coupling / (4.0 * std::sqrt(M_PI));
    return 3.0 * wp.coupling / (32.0 * std::pow(M_PI, 1.5));
}

double friction_rate(const WorkingParams& wp) { return wp.beta * beta0_power(wp); }

RateReport power_gamma_closed_form(const WorkingParams& wp) {
    wp.validate();
    const double x2 = wp.x_beta_sq();
    double P, Gamma;
    if (wp.model == Model::DP) {
        P = beta0_power(wp) * (1.0 - 0.75 * x2 + (15.0 / 64.0) * x2 * x2);
        Gamma = wp.beta * wp.coupling / (6.0 * std::sqrt(M_PI)) * (1.0 - (9.0 / 16.0) * x2);
    } else {
        P = beta0_power(wp) * (1.0 - 1.25 * x2 + (35.0 / 64.0) * x2 * x2);
        Gamma = wp.beta * wp.coupling / (16.0 * std::pow(M_PI, 1.5)) * (1.0 - (15.0 / 16.0) * x2);
    }
    return finish_report(wp, P, Gamma);
}

RateReport power_gamma_quadrature(const WorkingParams& wp, double rel_tol) {
    wp.validate();
    const double b = wp.beta;
    // Radial reduction with u = sigma k: d^3k/(2 pi)^3 -> k^2 dk / (2 pi^2),
    // and k^2 D_k = coupling * measure_weighted_kernel(u).
    auto p_integrand = [&](double u) {
        const double u2 = u * u;
        const double poly = 1.0 - 0.25 * b * u2 + b * b * u2 * u2 / 64.0;
        return measure_weighted_kernel(wp.model, u) * u2 * poly;
    };
    auto g_integrand = [&](double u) {
        const double u2 = u * u;
        const double poly = 1.0 - (3.0 / 16.0) * b * u2;
        return measure_weighted_kernel(wp.model, u) * u2 * poly;
    };
    const double upper = 16.0;
    const double ip = quad::integrate(p_integrand, upper, rel_tol, "heating power");
    const double ig = quad::integrate(g_integrand, upper, rel_tol, "dissipation rate");
    const double P = 0.5 * wp.coupling / (2.0 * M_PI * M_PI) * ip;
    const double Gamma = (b / 3.0) * wp.coupling / (2.0 * M_PI * M_PI) * ig;
    return finish_report(wp, P, Gamma);
}

RateReport power_gamma_moments(const WorkingParams& wp) {
    wp.validate();
    const double b = wp.beta;
    // Same radial integrals via exact Gaussian half-moments. The DP kernel
    // contributes 4 pi u^n, the CSL kernel u^(n+2).
    const int base = wp.model == Model::DP ? 2 : 4;
    const double front = wp.model == Model::DP ? 4.0 * M_PI : 1.0;
    auto hm = [&](int extra) { return front * quad::gaussian_half_moment(base + extra); };
    const double ip = hm(0) - 0.25 * b * hm(2) + b * b / 64.0 * hm(4);
    const double ig = hm(0) - (3.0 / 16.0) * b * hm(2);
    const double P = 0.5 * wp.coupling / (2.0 * M_PI * M_PI) * ip;
    const double Gamma = (b / 3.0) * wp.coupling / (2.0 * M_PI * M_PI) * ig;
    return finish_report(wp, P, Gamma);
}

double effective_temperature(const WorkingParams& wp) {
    wp.validate();
    if (wp.beta <= 0.0)
        throw NumericError("effective temperature undefined at beta = 0 (Gamma = 0)");
    const double t_beta = 1.0 / wp.beta;
    const double u = WorkingParams::e_sigma / t_beta;
    double num, den;
    if (wp.model == Model::DP) {
        num = 1.0 - 1.5 * u + (15.0 / 16.0) * u * u;
        den = 1.0 - (9.0 / 8.0) * u;
    } else {
        num = 1.0 - 2.5 * u + (35.0 / 16.0) * u * u;
        den = 1.0 - (15.0 / 8.0) * u;
    }
    if (den <= 0.0)
        throw NumericError("no finite equilibrium temperature: dissipation rate is <= 0");
    return t_beta * num / den;
}

double critical_beta_w(Model model) {
    // x_beta^2 = beta/2 hits 16/9 (DP) or 16/15 (CSL).
    return model == Model::DP ? 32.0 / 9.0 : 32.0 / 15.0;
}

RateReport power_gamma_closed_form(const ModelParams& p, const PhysicalConstants& pc) {
    return to_si(power_gamma_closed_form(WorkingParams::from_si(p, pc)), p, pc);
}

RateReport power_gamma_quadrature(const ModelParams& p, const PhysicalConstants& pc,
                                  double rel_tol) {
    return to_si(power_gamma_quadrature(WorkingParams::from_si(p, pc), rel_tol), p, pc);
}

double friction_rate(const ModelParams& p, const PhysicalConstants& pc) {
    const UnitSystem u = UnitSystem::make(p, pc);
    return u.rate_to_si(friction_rate(WorkingParams::from_si(p, pc)));
}

double effective_temperature(const ModelParams& p, const PhysicalConstants& pc) {
    const UnitSystem u = UnitSystem::make(p, pc);
    return effective_temperature(WorkingParams::from_si(p, pc)) * u.energy_unit / pc.kB;
}

double critical_beta(const ModelParams& p, const PhysicalConstants& pc) {
    const UnitSystem u = UnitSystem::make(p, pc);
    return u.beta_to_si(critical_beta_w(p.model));
}

double threshold_temperature(const ModelParams& p, const PhysicalConstants& pc) {
    p.validate();
    return pc.hbar * pc.hbar / (p.mass * pc.kB * p.sigma * p.sigma);
}

MixedEquilibrium mixed_equilibrium(const RateReport& report, const EnvironmentParams& env,
                                   double kB) {
    env.validate();
    const double gamma_total = report.Gamma + env.Gamma_env;
    if (gamma_total <= 0.0)
        throw NumericError("no equilibrium: Gamma + Gamma_env <= 0");
    MixedEquilibrium m;
    m.E_inf = (report.P + env.P_env(kB)) / gamma_total;
    m.T_eff = (2.0 / 3.0) * m.E_inf / kB;
    return m;
}

}  // namespace collapse
