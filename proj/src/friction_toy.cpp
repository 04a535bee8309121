#include "collapse/friction_toy.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace collapse {

void ToyParams::validate() const {
    if (!std::isfinite(diffusion) || diffusion <= 0.0)
        throw std::invalid_argument("toy diffusion D must be finite and > 0");
    if (!std::isfinite(beta) || beta <= 0.0)
        throw std::invalid_argument("toy beta must be finite and > 0");
    if (!std::isfinite(mass) || mass <= 0.0)
        throw std::invalid_argument("toy mass must be finite and > 0");
}

double toy_energy_ode(double E0, const ToyParams& tp, double t) {
    tp.validate();
    const double gamma = 2.0 * tp.beta * tp.diffusion / tp.mass;
    const double e_inf = 1.5 / tp.beta;
    return e_inf + (E0 - e_inf) * std::exp(-gamma * t);
}

ToyEnsemble toy_langevin_ensemble(const ToyParams& tp, std::uint64_t n_traj, double horizon,
                                  double dt, const std::vector<double>& time_grid,
                                  std::uint64_t master_seed, ToyScheme scheme, int n_threads) {
    tp.validate();
    if (n_traj < 2) throw std::invalid_argument("n_traj must be >= 2");
    if (!(dt > 0.0) || !(horizon > 0.0))
        throw std::invalid_argument("dt and horizon must be > 0");
    const double theta = tp.beta * tp.diffusion / tp.mass;  // per-component drift rate
    if (scheme == ToyScheme::euler && dt > 0.01 / theta)
        throw std::invalid_argument("Euler step too large: need dt <= 0.01 m/(beta D)");

    const auto n_steps = static_cast<std::uint64_t>(std::ceil(horizon / dt - 1e-12));
    std::vector<std::uint64_t> grid_steps;
    for (double t : time_grid) {
        if (t < 0.0 || t > horizon + 1e-12 * horizon)
            throw std::invalid_argument("time grid must lie within [0, horizon]");
        grid_steps.push_back(static_cast<std::uint64_t>(std::llround(t / dt)));
    }

    // exact OU coefficients; the Euler path uses drift/kick instead
    const double a = std::exp(-theta * dt);
    double s2 = tp.mass / tp.beta * (1.0 - a * a);
    if (theta * dt < 1e-10) s2 = 2.0 * tp.diffusion * dt;  // beta -> 0 limit
    const double s = std::sqrt(s2);
    const double euler_drift = -theta * dt;
    const double euler_kick = std::sqrt(2.0 * tp.diffusion * dt);

    const size_t g = grid_steps.size();
    std::vector<double> rows(n_traj * g);
    std::vector<Vec3> finals(n_traj);

    auto worker = [&](std::uint64_t i) {
        Xoshiro256pp rng(stream_seed(master_seed, i));
        Vec3 p{0.0, 0.0, 0.0};
        size_t next = 0;
        auto record_up_to = [&](std::uint64_t step) {
            while (next < g && grid_steps[next] <= step) {
                rows[i * g + next] = 0.5 * dot(p, p) / tp.mass;
                ++next;
            }
        };
        record_up_to(0);
        for (std::uint64_t step = 1; step <= n_steps; ++step) {
            if (scheme == ToyScheme::exact_ou) {
                for (int d = 0; d < 3; ++d) p[d] = a * p[d] + s * rng.normal();
            } else {
                for (int d = 0; d < 3; ++d) p[d] += euler_drift * p[d] + euler_kick * rng.normal();
            }
            record_up_to(step);
        }
        finals[i] = p;
    };

    if (n_threads <= 1) {
        for (std::uint64_t i = 0; i < n_traj; ++i) worker(i);
    } else {
        std::vector<std::thread> pool;
        std::exception_ptr failure = nullptr;
        std::mutex failure_mutex;
        const std::uint64_t chunk = (n_traj + n_threads - 1) / n_threads;
        for (int t = 0; t < n_threads; ++t) {
            const std::uint64_t lo = chunk * t;
            const std::uint64_t hi = std::min<std::uint64_t>(n_traj, lo + chunk);
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

    ToyEnsemble out;
    out.final_momenta = std::move(finals);
    out.stats.time_grid = time_grid;
    out.stats.n_traj = n_traj;
    out.stats.mean_H.assign(g, 0.0);
    out.stats.stderr_H.assign(g, 0.0);
    for (size_t j = 0; j < g; ++j) {
        double sum = 0.0;
        for (std::uint64_t i = 0; i < n_traj; ++i) sum += rows[i * g + j];
        const double mean = sum / static_cast<double>(n_traj);
        double ss = 0.0;
        for (std::uint64_t i = 0; i < n_traj; ++i) {
            const double dev = rows[i * g + j] - mean;
            ss += dev * dev;
        }
        out.stats.mean_H[j] = mean;
        out.stats.stderr_H[j] =
            std::sqrt(ss / (static_cast<double>(n_traj - 1) * static_cast<double>(n_traj)));
    }
    return out;
}

}  // namespace collapse
