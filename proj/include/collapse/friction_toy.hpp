#pragma once

#include <cstdint>
#include <vector>

#include "collapse/jump_kinetics.hpp"

namespace collapse {

/// Single-particle linear-friction exercise model: position-measurement
/// decoherence of strength D with a momentum admixture in the Lindblad
/// generator. Heats at P = 3D/m, relaxes the mean energy at Gamma = 2 beta D/m
/// and has the Gibbs state ~ exp(-beta p^2/2m) as its exact steady state.
struct ToyParams {
    double diffusion = 1.0;  // D [kg^2 m^2 s^-3]
    double beta = 1.0;       // inverse equilibrium temperature [1/J]
    double mass = 1.0;       // [kg]
    void validate() const;
};

/// d<H>/dt = 3D/m - (2 beta D/m) <H>:
/// E(t) = 3/(2 beta) + (E0 - 3/(2 beta)) exp(-2 beta D t / m).
double toy_energy_ode(double E0, const ToyParams& tp, double t);

enum class ToyScheme {
    euler,     // Euler-Maruyama, dt-limited: dp = -(beta D/m) p dt + sqrt(2 D dt) xi
    exact_ou,  // exact OU update: p -> a p + s xi, a = exp(-theta dt),
               // s^2 = (m/beta)(1 - a^2); unconditionally unbiased
};

struct ToyEnsemble {
    EnsembleStats stats;
    std::vector<Vec3> final_momenta;  // one sample per trajectory at the horizon
};

/// Langevin ensemble of the toy model starting from p = 0. The momentum
/// marginal converges to the Maxwell-Boltzmann density with <p^2> = 3m/beta.
/// Grid points are snapped to step multiples. Euler throws on
/// dt > 0.01 m/(beta D); the exact OU scheme has no step restriction.
ToyEnsemble toy_langevin_ensemble(const ToyParams& tp, std::uint64_t n_traj, double horizon,
                                  double dt, const std::vector<double>& time_grid,
                                  std::uint64_t master_seed,
                                  ToyScheme scheme = ToyScheme::exact_ou, int n_threads = 1);

}  // namespace collapse
