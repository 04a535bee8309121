#include "collapse/jump_kinetics.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "collapse/quadrature.hpp"
#include "collapse/rates.hpp"

namespace collapse {

namespace {

// (1 - exp(-x))/x, continuous through x = 0
double phi(double x) {
    if (std::abs(x) < 1e-8) return 1.0 - 0.5 * x;
    return -std::expm1(-x) / x;
}

}  // namespace

double exact_energy(double E0, double P, double Gamma, double t) {
    const double x = Gamma * t;
    return E0 * std::exp(-x) + P * t * phi(x);
}

double exact_energy_trajectory(double E0, const WorkingParams& wp, double t) {
    const RateReport r = power_gamma_closed_form(wp);
    return exact_energy(E0, r.P, r.Gamma, t);
}

JumpProcess::JumpProcess(const WorkingParams& wp, std::uint64_t max_proposals)
    : wp_(wp), max_proposals_(max_proposals) {
    wp_.validate();
    if (wp_.model == Model::DP) {
        // density prefactor: D_k/(2 pi)^3 = coupling e^{-k^2}/(2 pi^2 k^2)
        prefac_ = wp_.coupling / (2.0 * M_PI * M_PI);
        base_power_ = 0;
    } else {
        // D_k/(2 pi)^3 = coupling e^{-k^2}/(8 pi^3)
        prefac_ = wp_.coupling / (8.0 * M_PI * M_PI * M_PI);
        base_power_ = 2;
    }
    c_ = wp_.beta / 8.0;
}

double JumpProcess::rate_density(const Vec3& p, const Vec3& k) const {
    const double k2 = dot(k, k);
    if (k2 == 0.0 && wp_.model == Model::DP)
        throw std::domain_error("DP jump density is singular at k = 0");
    const double factor = 1.0 - c_ * k2 - 0.25 * wp_.beta * dot(k, p);
    const double kernel = wp_.model == Model::DP ? std::exp(-k2) / k2 : std::exp(-k2);
    return prefac_ * kernel * factor * factor;
}

JumpProcess::Envelope JumpProcess::make_envelope(double p_norm) const {
    Envelope env;
    env.d = 0.25 * wp_.beta * p_norm;
    const double c = c_, d = env.d;
    // (1 + c k^2 + d k)^2 expanded over monomials k^j, j = 0..4
    const std::array<double, 5> coeff = {1.0, 2.0 * d, 2.0 * c + d * d, 2.0 * c * d, c * c};
    for (int j = 0; j < 5; ++j) {
        env.weight[j] = coeff[j] * quad::gaussian_half_moment(base_power_ + j);
        env.total_weight += env.weight[j];
    }
    env.rate = 4.0 * M_PI * prefac_ * env.total_weight;
    return env;
}

double JumpProcess::envelope_rate(double p_norm) const { return make_envelope(p_norm).rate; }

double JumpProcess::total_rate(double p_norm) const {
    const double c = c_, d = 0.25 * wp_.beta * p_norm;
    // angular average of (1 - c k^2 - d k mu)^2 over the sphere:
    // (1 - c k^2)^2 + d^2 k^2 / 3
    auto hm = [&](int j) { return quad::gaussian_half_moment(base_power_ + j); };
    const double iso = hm(0) - 2.0 * c * hm(2) + c * c * hm(4);
    const double aniso = d * d / 3.0 * hm(2);
    return 4.0 * M_PI * prefac_ * (iso + aniso);
}

JumpProcess::Jump JumpProcess::sample_next_jump(const Vec3& p, Xoshiro256pp& rng) const {
    const Envelope env = make_envelope(norm(p));
    double wait = 0.0;
    for (std::uint64_t attempt = 0; attempt < max_proposals_; ++attempt) {
        wait += rng.exponential(env.rate);

        // mixture component, then radial shell k = sqrt(Gamma_((b+j+1)/2))
        double pick = rng.uniform01() * env.total_weight;
        int j = 0;
        while (j < 4 && pick > env.weight[j]) {
            pick -= env.weight[j];
            ++j;
        }
        const double k_norm = std::sqrt(rng.gamma_half_integer(base_power_ + j + 1));
        const Vec3 dir = rng.unit_vector();
        const Vec3 k{k_norm * dir[0], k_norm * dir[1], k_norm * dir[2]};

        const double k2 = k_norm * k_norm;
        const double true_factor = 1.0 - c_ * k2 - 0.25 * wp_.beta * dot(k, p);
        const double env_factor = 1.0 + c_ * k2 + env.d * k_norm;
        const double accept = (true_factor * true_factor) / (env_factor * env_factor);
        if (rng.uniform01() < accept) return Jump{wait, k};
    }
    throw NumericError("thinning sampler exceeded proposal cap (envelope bug)");
}

Trajectory simulate_trajectory(const Vec3& p0, const WorkingParams& wp, double horizon,
                               std::uint64_t seed, std::uint64_t max_jumps) {
    if (!(horizon > 0.0)) throw std::invalid_argument("horizon must be > 0");
    const JumpProcess process(wp);
    Xoshiro256pp rng(seed);

    Trajectory traj;
    traj.seed = seed;
    traj.states.push_back(MomentumState{p0, 0.0});
    if (wp.coupling == 0.0) return traj;  // no jumps at zero coupling

    Vec3 p = p0;
    double t = 0.0;
    while (true) {
        const auto jump = process.sample_next_jump(p, rng);
        if (t + jump.wait > horizon) break;
        t += jump.wait;
        for (int i = 0; i < 3; ++i) p[i] += jump.transfer[i];
        traj.states.push_back(MomentumState{p, t});
        if (traj.states.size() > max_jumps) {
            traj.truncated = true;
            break;
        }
    }
    return traj;
}

namespace {

void validate_grid(const std::vector<double>& grid, double horizon) {
    if (grid.empty()) throw std::invalid_argument("time grid must be non-empty");
    double prev = -1.0;
    for (double t : grid) {
        if (t < 0.0 || t > horizon)
            throw std::invalid_argument("time grid must lie within [0, horizon]");
        if (t <= prev && prev >= 0.0)
            throw std::invalid_argument("time grid must be strictly increasing");
        prev = t;
    }
}

/// Runs `worker(i)` for i in [0, n) over a fixed partition; results land in
/// preallocated per-trajectory storage, so scheduling never reorders them.
template <class Worker>
void parallel_for(std::uint64_t n, int n_threads, Worker&& worker) {
    if (n_threads <= 1) {
        for (std::uint64_t i = 0; i < n; ++i) worker(i);
        return;
    }
    std::vector<std::thread> pool;
    std::exception_ptr failure = nullptr;
    std::mutex failure_mutex;
    const std::uint64_t chunk = (n + n_threads - 1) / n_threads;
    for (int t = 0; t < n_threads; ++t) {
        const std::uint64_t lo = chunk * t;
        const std::uint64_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, lo, hi] {
            try {
                for (std::uint64_t i = lo; i < hi; ++i) worker(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
}

EnsembleStats reduce_rows(const std::vector<double>& rows, const std::vector<double>& grid,
                          std::uint64_t n_traj) {
    const size_t g = grid.size();
    EnsembleStats stats;
    stats.time_grid = grid;
    stats.mean_H.assign(g, 0.0);
    stats.stderr_H.assign(g, 0.0);
    stats.n_traj = n_traj;
    for (size_t j = 0; j < g; ++j) {
        double sum = 0.0;
        for (std::uint64_t i = 0; i < n_traj; ++i) sum += rows[i * g + j];
        const double mean = sum / static_cast<double>(n_traj);
        double ss = 0.0;
        for (std::uint64_t i = 0; i < n_traj; ++i) {
            const double dev = rows[i * g + j] - mean;
            ss += dev * dev;
        }
        stats.mean_H[j] = mean;
        stats.stderr_H[j] =
            n_traj > 1 ? std::sqrt(ss / (static_cast<double>(n_traj - 1) * n_traj)) : 0.0;
    }
    return stats;
}

}  // namespace

EnsembleStats run_ensemble(const Vec3& p0, const WorkingParams& wp, double horizon,
                           const std::vector<double>& time_grid, std::uint64_t n_traj,
                           std::uint64_t master_seed, int n_threads, std::uint64_t max_jumps) {
    if (n_traj < 2) throw std::invalid_argument("n_traj must be >= 2");
    validate_grid(time_grid, horizon);
    const JumpProcess process(wp);
    const size_t g = time_grid.size();
    std::vector<double> rows(n_traj * g);

    parallel_for(n_traj, n_threads, [&](std::uint64_t i) {
        Xoshiro256pp rng(stream_seed(master_seed, i));
        Vec3 p = p0;
        double t = 0.0;
        size_t next = 0;
        std::uint64_t jumps = 0;
        if (wp.coupling == 0.0) {
            for (size_t j = 0; j < g; ++j) rows[i * g + j] = 0.5 * dot(p, p);
            return;
        }
        while (next < g) {
            const auto jump = process.sample_next_jump(p, rng);
            const double t_next = t + jump.wait;
            while (next < g && time_grid[next] < t_next) {
                rows[i * g + next] = 0.5 * dot(p, p);
                ++next;
            }
            if (t_next > horizon) break;
            t = t_next;
            for (int d = 0; d < 3; ++d) p[d] += jump.transfer[d];
            if (++jumps > max_jumps)
                throw NumericError("trajectory " + std::to_string(i) +
                                   " exceeded the jump-count cap");
        }
        while (next < g) {
            rows[i * g + next] = 0.5 * dot(p, p);
            ++next;
        }
    });

    return reduce_rows(rows, time_grid, n_traj);
}

EnsembleStats run_ensemble_ou(const Vec3& p0, const WorkingParams& wp, const OuThermostat& bath,
                              double split_dt, double horizon,
                              const std::vector<double>& time_grid, std::uint64_t n_traj,
                              std::uint64_t master_seed, int n_threads, std::uint64_t max_jumps) {
    if (n_traj < 2) throw std::invalid_argument("n_traj must be >= 2");
    if (!(split_dt > 0.0)) throw std::invalid_argument("split_dt must be > 0");
    if (!(bath.theta > 0.0) || !(bath.diffusion >= 0.0))
        throw std::invalid_argument("thermostat needs theta > 0 and diffusion >= 0");
    validate_grid(time_grid, horizon);
    const auto n_windows = static_cast<std::uint64_t>(std::llround(horizon / split_dt));
    if (std::abs(n_windows * split_dt - horizon) > 1e-9 * horizon)
        throw std::invalid_argument("horizon must be a multiple of split_dt");
    // grid points must land on window boundaries
    std::vector<std::uint64_t> grid_windows;
    for (double t : time_grid) {
        const auto w = static_cast<std::uint64_t>(std::llround(t / split_dt));
        if (std::abs(w * split_dt - t) > 1e-9 * std::max(t, split_dt))
            throw std::invalid_argument("grid points must be multiples of split_dt");
        grid_windows.push_back(w);
    }

    const JumpProcess process(wp);
    const double half = 0.5 * split_dt;
    const double decay = std::exp(-bath.theta * half);
    const double kick =
        std::sqrt(bath.diffusion / bath.theta * (1.0 - decay * decay));

    const size_t g = time_grid.size();
    std::vector<double> rows(n_traj * g);

    parallel_for(n_traj, n_threads, [&](std::uint64_t i) {
        Xoshiro256pp rng(stream_seed(master_seed, i));
        Vec3 p = p0;
        size_t next = 0;
        std::uint64_t jumps = 0;
        auto record_up_to = [&](std::uint64_t window) {
            while (next < g && grid_windows[next] <= window) {
                rows[i * g + next] = 0.5 * dot(p, p);
                ++next;
            }
        };
        record_up_to(0);
        for (std::uint64_t w = 1; w <= n_windows && next < g; ++w) {
            for (int d = 0; d < 3; ++d) p[d] = decay * p[d] + kick * rng.normal();
            if (wp.coupling > 0.0) {
                double remaining = split_dt;
                while (true) {
                    const auto jump = process.sample_next_jump(p, rng);
                    if (jump.wait > remaining) break;  // memoryless: restart next window
                    remaining -= jump.wait;
                    for (int d = 0; d < 3; ++d) p[d] += jump.transfer[d];
                    if (++jumps > max_jumps)
                        throw NumericError("trajectory " + std::to_string(i) +
                                           " exceeded the jump-count cap");
                }
            }
            for (int d = 0; d < 3; ++d) p[d] = decay * p[d] + kick * rng.normal();
            record_up_to(w);
        }
    });

    return reduce_rows(rows, time_grid, n_traj);
}

}  // namespace collapse
