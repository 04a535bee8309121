#pragma once

#include <string>

#include "collapse/constants.hpp"

namespace collapse {

enum class Model { DP, CSL };

const char* to_string(Model model);
Model model_from_string(const std::string& name);

/// Physical parameters of a dissipative collapse model, SI units.
///
/// beta is the canonical dissipation parameter (inverse noise temperature,
/// 1/J); T_beta = 1/(kB beta) is always a derived view. beta = 0 selects the
/// standard non-dissipative DP/CSL dynamics.
struct ModelParams {
    Model model = Model::DP;
    double sigma = 1e-10;     // smearing length [m]
    double gamma_csl = 0.0;   // CSL coupling in the mass-weighted kernel convention
                              // [m^3 s^-1 kg^-2]; meaningful iff model == CSL
    double mass = 1.67262192369e-27;  // particle mass [kg]
    double beta = 0.0;                // inverse noise temperature [1/J], >= 0

    void validate() const;  // throws std::invalid_argument on domain violations

    /// Derived CSL collapse rate lambda = gamma m0^2 / (sqrt(4 pi) sigma)^3 [1/s].
    double lambda_csl(const PhysicalConstants& pc) const;

    /// T_beta = 1/(kB beta) [K]; +inf at beta = 0.
    double t_beta(const PhysicalConstants& pc) const;
};

/// Dimensionless view of a parameter set.
///
/// x_beta_sq = hbar^2 beta / (2 m sigma^2) controls the dissipative-vs-heating
/// regime, e_sigma = hbar^2/(4 m sigma^2) is the elementary energy transfer,
/// and rate_scale is the total jump rate of the beta = 0 process [1/s].
struct DimensionlessParams {
    double x_beta_sq = 0.0;
    double rate_scale = 0.0;  // 1/s
    double e_sigma = 0.0;     // J
};

/// Scales of the internal working-unit system hbar = m = sigma = 1.
/// All quadrature and Monte Carlo run in these units; SI values of the
/// couplings would otherwise drive intermediates to ~1e-42 scales.
struct UnitSystem {
    double mass_unit;      // kg
    double length_unit;    // m
    double time_unit;      // s,        m sigma^2 / hbar
    double energy_unit;    // J,        hbar^2 / (m sigma^2) = 4 E_sigma
    double momentum_unit;  // kg m/s,   hbar / sigma

    static UnitSystem make(const ModelParams& p, const PhysicalConstants& pc);

    double beta_to_working(double beta_si) const { return beta_si * energy_unit; }
    double beta_to_si(double beta_w) const { return beta_w / energy_unit; }
    double rate_to_si(double rate_w) const { return rate_w / time_unit; }
    double power_to_si(double power_w) const { return power_w * energy_unit / time_unit; }
    double energy_to_si(double energy_w) const { return energy_w * energy_unit; }
    double time_to_working(double t_si) const { return t_si / time_unit; }
};

/// Parameters in working units hbar = m = sigma = 1.
///
/// coupling is G m^3 sigma / hbar^2 for DP and gamma m^3 / (hbar sigma) for
/// CSL; beta is measured in inverse working energy, so x_beta^2 = beta / 2
/// and E_sigma = 1/4 exactly.
struct WorkingParams {
    Model model = Model::DP;
    double coupling = 1.0;
    double beta = 0.0;

    void validate() const;
    double x_beta_sq() const { return 0.5 * beta; }
    static constexpr double e_sigma = 0.25;

    static WorkingParams from_si(const ModelParams& p, const PhysicalConstants& pc);
};

DimensionlessParams nondimensionalize(const ModelParams& p, const PhysicalConstants& pc);

/// Inverse of nondimensionalize given the model and particle mass.
/// Recovers sigma, beta and (for CSL) gamma from the dimensionless set.
ModelParams redimensionalize(const DimensionlessParams& d, Model model, double mass,
                             const PhysicalConstants& pc);

}  // namespace collapse
