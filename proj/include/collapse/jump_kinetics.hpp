#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "collapse/params.hpp"
#include "collapse/rng.hpp"

namespace collapse {

using Vec3 = std::array<double, 3>;

inline double dot(const Vec3& a, const Vec3& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

struct MomentumState {
    Vec3 p{0.0, 0.0, 0.0};  // momentum, working units
    double t = 0.0;         // time, working units
    double kinetic_energy() const { return 0.5 * dot(p, p); }
};

struct Trajectory {
    std::vector<MomentumState> states;  // jump epochs, first entry at t = 0
    std::uint64_t seed = 0;
    bool truncated = false;  // hit the jump-count cap before the horizon
};

struct EnsembleStats {
    std::vector<double> time_grid;
    std::vector<double> mean_H;
    std::vector<double> stderr_H;
    std::uint64_t n_traj = 0;
};

/// Ornstein-Uhlenbeck thermostat modelling an external bath:
/// dp = -theta p dt + sqrt(2 D) dW per component, so Gamma_env = 2 theta and
/// T_env = D / theta (energy units, kB = 1).
struct OuThermostat {
    double theta = 0.0;
    double diffusion = 0.0;
    double gamma_env() const { return 2.0 * theta; }
    double t_env() const { return diffusion / theta; }
};

/// Momentum jump process p -> p + k (working units, transfer hbar k = k).
///
/// The jump intensity over transfer space is
///   d^3k/(2 pi)^3 D_k (1 + (beta/8)[p^2 - (p + k)^2])^2
///     = d^3k/(2 pi)^3 D_k (1 - beta k^2/8 - beta (k.p)/4)^2,
/// which suppresses energy-gaining transfers and reproduces the balance
/// d<H>/dt = P - Gamma <H> exactly.
///
/// Sampling is exact thinning: the angle-independent envelope factor
/// (1 + beta k^2/8 + beta k |p|/4)^2 dominates the true factor for every
/// direction, its radial density is a finite mixture of monomial-times-
/// Gaussian shells (gamma variates in k^2), and its total rate has a closed
/// form in Gaussian half-moments. Waits are exponential at the envelope
/// rate; p is constant between jumps, so no time discretisation enters.
class JumpProcess {
  public:
    explicit JumpProcess(const WorkingParams& wp, std::uint64_t max_proposals = 10'000'000);

    /// Intensity per d^3k for momentum transfer k out of state p.
    double rate_density(const Vec3& p, const Vec3& k) const;

    /// Exact total jump rate at momentum magnitude |p| (closed form).
    double total_rate(double p_norm) const;

    /// Envelope (dominating) rate at |p|; >= total_rate.
    double envelope_rate(double p_norm) const;

    struct Jump {
        double wait = 0.0;
        Vec3 transfer{0.0, 0.0, 0.0};
    };

    /// Draws the next jump epoch and transfer for the process frozen at p.
    Jump sample_next_jump(const Vec3& p, Xoshiro256pp& rng) const;

    const WorkingParams& params() const { return wp_; }

  private:
    struct Envelope {
        std::array<double, 5> weight{};  // mixture weights per monomial shell
        double total_weight = 0.0;
        double rate = 0.0;
        double d = 0.0;  // beta |p| / 4
    };
    Envelope make_envelope(double p_norm) const;

    WorkingParams wp_;
    double prefac_;      // converts mixture weight sums to a rate
    int base_power_;     // radial measure k^base, 0 for DP, 2 for CSL
    double c_;           // beta / 8
    std::uint64_t max_proposals_;
};

/// E(t) = E_inf + (E0 - E_inf) exp(-Gamma t) with E_inf = P / Gamma,
/// continued through Gamma = 0 as E0 + P t. Stable for small |Gamma t|.
double exact_energy(double E0, double P, double Gamma, double t);

/// Same with P, Gamma taken from the closed forms for wp.
double exact_energy_trajectory(double E0, const WorkingParams& wp, double t);

Trajectory simulate_trajectory(const Vec3& p0, const WorkingParams& wp, double horizon,
                               std::uint64_t seed, std::uint64_t max_jumps = 10'000'000);

/// Mean and standard error of H = p^2/2 on a time grid over n_traj
/// independent trajectories. Per-trajectory seeds derive from
/// stream_seed(master_seed, i); the reduction runs in index order, so the
/// result is bitwise identical for any thread count.
EnsembleStats run_ensemble(const Vec3& p0, const WorkingParams& wp, double horizon,
                           const std::vector<double>& time_grid, std::uint64_t n_traj,
                           std::uint64_t master_seed, int n_threads = 1,
                           std::uint64_t max_jumps = 10'000'000);

/// Jump process combined with an OU thermostat by Strang splitting with
/// window split_dt: exact OU half-steps around an exact frozen-p jump
/// window. Grid points must be multiples of split_dt.
EnsembleStats run_ensemble_ou(const Vec3& p0, const WorkingParams& wp, const OuThermostat& bath,
                              double split_dt, double horizon,
                              const std::vector<double>& time_grid, std::uint64_t n_traj,
                              std::uint64_t master_seed, int n_threads = 1,
                              std::uint64_t max_jumps = 10'000'000);

}  // namespace collapse
