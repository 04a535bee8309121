#pragma once

#include <optional>
#include <string>

#include "collapse/params.hpp"

namespace collapse {

enum class Regime { dissipative, critical, heating };
const char* to_string(Regime regime);

/// Heating power P, dissipation rate Gamma, friction rate eta and the
/// derived equilibrium quantities for one parameter set. E_inf = P/Gamma and
/// T_noise = (2/3) E_inf / kB are present only on the dissipative branch.
/// Fields are SI unless working_units is set, in which case energies are in
/// units of hbar^2/(m sigma^2), rates in hbar/(m sigma^2), and temperatures
/// are reported as energies (kB = 1).
struct RateReport {
    Model model = Model::DP;
    double sigma = 1.0;
    double beta = 0.0;
    double x_beta_sq = 0.0;
    double P = 0.0;
    double Gamma = 0.0;
    double eta = 0.0;
    std::optional<double> E_inf;
    std::optional<double> T_noise;
    Regime regime = Regime::critical;
    bool working_units = true;
};

struct EnvironmentParams {
    double T_env = 0.0;      // bath temperature [K], or energy in working units
    double Gamma_env = 0.0;  // bath relaxation rate [1/s]
    void validate() const;
    /// Defining relation (3/2) kB T_env = P_env / Gamma_env.
    double P_env(double kB) const { return 1.5 * kB * T_env * Gamma_env; }
};

struct MixedEquilibrium {
    double E_inf = 0.0;
    double T_eff = 0.0;
};

// ---- working-unit core (hbar = m = sigma = 1, kB = 1) ----

/// beta = 0 heating power: coupling/(4 sqrt(pi)) for DP,
/// 3 coupling/(32 pi^(3/2)) for CSL.
double beta0_power(const WorkingParams& wp);

/// Closed-form quartic/quadratic expressions:
///   DP : P = P0 (1 - 3/4 x^2 + 15/64 x^4),  Gamma = beta c_DP (1 - 9/16 x^2)
///   CSL: P = P0 (1 - 5/4 x^2 + 35/64 x^4),  Gamma = beta c_CSL (1 - 15/16 x^2)
/// with x^2 = x_beta^2, c_DP = coupling/(6 sqrt(pi)), c_CSL = coupling/(16 pi^(3/2)).
RateReport power_gamma_closed_form(const WorkingParams& wp);

/// Independent route: adaptive radial quadrature of
///   P     = (m/2)    int d^3k/(2 pi)^3 D_k k^2 (1 - beta k^2/4 + beta^2 k^4/64)
///   Gamma = (beta m/3) int d^3k/(2 pi)^3 D_k k^2 (1 - 3 beta k^2/16)
/// in working units.
RateReport power_gamma_quadrature(const WorkingParams& wp, double rel_tol = 1e-12);

/// Second independent route: the same integrals evaluated with exact
/// half-line Gaussian moments (no quadrature).
RateReport power_gamma_moments(const WorkingParams& wp);

/// eta = beta * P0; identical to (beta m/2) int d^3k/(2 pi)^3 D_k k^2.
double friction_rate(const WorkingParams& wp);

/// Effective noise temperature on the dissipative branch (energy units):
///   DP : T = T_beta (1 - 3/2 u + 15/16 u^2) / (1 - 9/8 u)
///   CSL: T = T_beta (1 - 5/2 u + 35/16 u^2) / (1 - 15/8 u)
/// with u = E_sigma / T_beta. Throws NumericError when Gamma <= 0.
double effective_temperature(const WorkingParams& wp);

/// Working beta at which Gamma vanishes: 32/9 (DP), 32/15 (CSL),
/// i.e. x_beta^2 = 16/9 resp. 16/15.
double critical_beta_w(Model model);

// ---- SI wrappers ----

RateReport power_gamma_closed_form(const ModelParams& p, const PhysicalConstants& pc);
RateReport power_gamma_quadrature(const ModelParams& p, const PhysicalConstants& pc,
                                  double rel_tol = 1e-12);
double friction_rate(const ModelParams& p, const PhysicalConstants& pc);
double effective_temperature(const ModelParams& p, const PhysicalConstants& pc);  // [K]
double critical_beta(const ModelParams& p, const PhysicalConstants& pc);          // [1/J]

/// Threshold temperature T0 = hbar^2/(m kB sigma^2) = 4 E_sigma / kB [K].
double threshold_temperature(const ModelParams& p, const PhysicalConstants& pc);

/// Combined equilibrium with an external bath:
///   E_inf = (P + P_env)/(Gamma + Gamma_env)
///   T_eff = (Gamma T + Gamma_env T_env)/(Gamma + Gamma_env) = (2/3) E_inf / kB.
/// Valid whenever Gamma + Gamma_env > 0, including the heating regime.
/// Pass kB = 1 for a working-unit report/environment pair.
MixedEquilibrium mixed_equilibrium(const RateReport& report, const EnvironmentParams& env,
                                   double kB);

}  // namespace collapse
