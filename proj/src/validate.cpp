#include <cmath>
#include <cstring>
#include <sstream>

#include "collapse/experiment.hpp"
#include "collapse/kernels.hpp"
#include "collapse/quadrature.hpp"
#include "collapse/stats.hpp"

namespace collapse {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(3);
    os << v;
    return os.str();
}

CheckResult check(const std::string& name, bool pass, const std::string& detail) {
    return CheckResult{name, pass, detail};
}

// Expected energy drift of the jump process at momentum p, by radial
// quadrature with the angular integrals done analytically. Must equal
// P - Gamma * H for every p (the balance identity is state independent).
double drift_by_quadrature(const WorkingParams& wp, double p_norm) {
    const double c = wp.beta / 8.0;
    const double d = 0.25 * wp.beta * p_norm;
    const double prefac = wp.model == Model::DP ? wp.coupling / (2.0 * M_PI * M_PI)
                                                : wp.coupling / (8.0 * M_PI * M_PI * M_PI);
    const int b = wp.model == Model::DP ? 0 : 2;
    auto integrand = [&](double k) {
        const double A = 1.0 - c * k * k;
        const double B = d * k;
        const double angular =
            k * k * (A * A + B * B / 3.0) - (4.0 / 3.0) * k * p_norm * A * B;
        return std::pow(k, b) * std::exp(-k * k) * angular;
    };
    return 2.0 * M_PI * prefac * quad::integrate(integrand, 16.0, 1e-12, "drift identity");
}

}  // namespace

std::vector<CheckResult> run_validation_suite(std::uint64_t seed) {
    std::vector<CheckResult> out;
    const PhysicalConstants pc;

    // closed form vs quadrature vs Gaussian-moment route on an x^2 grid
    {
        double worst = 0.0;
        for (Model model : {Model::DP, Model::CSL}) {
            for (int i = 0; i <= 8; ++i) {
                WorkingParams wp{model, 1.0, 2.0 * (4.0 * i / 8.0)};
                const auto cf = power_gamma_closed_form(wp);
                const auto qd = power_gamma_quadrature(wp);
                const auto mm = power_gamma_moments(wp);
                worst = std::max(worst, std::abs(qd.P - cf.P) / std::abs(cf.P));
                worst = std::max(worst, std::abs(mm.P - cf.P) / std::abs(cf.P));
                if (wp.beta > 0.0 && cf.Gamma != 0.0) {
                    worst = std::max(worst, std::abs(qd.Gamma - cf.Gamma) / std::abs(cf.Gamma));
                    worst = std::max(worst, std::abs(mm.Gamma - cf.Gamma) / std::abs(cf.Gamma));
                }
            }
        }
        out.push_back(check("closed form vs quadrature vs moments, x_beta^2 in [0,4]",
                            worst <= 1e-8, "max rel err " + fmt(worst)));
    }

    // beta = 0 heating powers
    {
        WorkingParams dp{Model::DP, 1.0, 0.0};
        WorkingParams csl{Model::CSL, 1.0, 0.0};
        const double p_dp = power_gamma_quadrature(dp).P;
        const double p_csl = power_gamma_quadrature(csl).P;
        const double e_dp = std::abs(p_dp - 1.0 / (4.0 * std::sqrt(M_PI))) * 4.0 * std::sqrt(M_PI);
        const double e_csl =
            std::abs(p_csl - 3.0 / (32.0 * std::pow(M_PI, 1.5))) * 32.0 * std::pow(M_PI, 1.5) / 3.0;
        out.push_back(check("beta=0 heating powers from quadrature",
                            e_dp <= 1e-10 && e_csl <= 1e-10,
                            "rel err dp " + fmt(e_dp) + ", csl " + fmt(e_csl)));
    }

    // DP -> CSL mapping: kernel grid and the sigma^2 derivative of P, Gamma
    {
        ModelParams p;
        p.model = Model::DP;
        p.sigma = 2.3e-10;
        p.mass = 3.1e-27;
        p.beta = 0.4 / nondimensionalize(p, pc).e_sigma;
        const double gamma = 7.7e-14;
        const double kernel_res = dp_to_csl_mapping_residual(p, gamma, pc, 64);

        ModelParams csl = p;
        csl.model = Model::CSL;
        csl.gamma_csl = gamma;
        const auto csl_report = power_gamma_closed_form(csl, pc);
        const double map_const = -pc.hbar * gamma / (4.0 * M_PI * pc.G);
        auto p_of = [&](double sigma) {
            ModelParams q = p;
            q.sigma = sigma;
            return power_gamma_closed_form(q, pc).P;
        };
        auto g_of = [&](double sigma) {
            ModelParams q = p;
            q.sigma = sigma;
            return power_gamma_closed_form(q, pc).Gamma;
        };
        const double p_res =
            std::abs(map_const * sigma_sq_derivative(p_of, p.sigma) - csl_report.P) /
            std::abs(csl_report.P);
        const double g_res =
            std::abs(map_const * sigma_sq_derivative(g_of, p.sigma) - csl_report.Gamma) /
            std::abs(csl_report.Gamma);
        out.push_back(check("DP->CSL mapping (kernel, P, Gamma)",
                            kernel_res <= 1e-6 && p_res <= 1e-6 && g_res <= 1e-6,
                            "residuals " + fmt(kernel_res) + ", " + fmt(p_res) + ", " +
                                fmt(g_res)));
    }

    // critical thresholds and the quadrature sign change
    {
        bool pass = true;
        std::string detail;
        for (Model model : {Model::DP, Model::CSL}) {
            WorkingParams wp{model, 1.0, critical_beta_w(model)};
            const auto cf = power_gamma_closed_form(wp);
            const double rel = std::abs(cf.Gamma) / (wp.beta * beta0_power(wp));
            pass = pass && rel <= 1e-12 && cf.regime == Regime::critical;
            WorkingParams lo = wp, hi = wp;
            lo.beta *= 0.99;
            hi.beta *= 1.01;
            pass = pass && power_gamma_quadrature(lo).Gamma > 0.0 &&
                   power_gamma_quadrature(hi).Gamma < 0.0;
            detail += std::string(to_string(model)) + " |Gamma|/(beta P0)=" + fmt(rel) + " ";
        }
        out.push_back(check("Gamma vanishes at x_beta^2 = 16/9 (DP), 16/15 (CSL)", pass, detail));
    }

    // effective temperature: formula vs (2/3) P/Gamma, asymptote, divergence
    {
        double worst = 0.0;
        for (Model model : {Model::DP, Model::CSL}) {
            const double beta_crit = critical_beta_w(model);
            for (double f : {1e-3, 0.1, 0.5, 0.9, 0.999}) {
                WorkingParams wp{model, 1.0, f * beta_crit};
                const auto cf = power_gamma_closed_form(wp);
                const double via_balance = (2.0 / 3.0) * cf.P / cf.Gamma;
                const double direct = effective_temperature(wp);
                worst = std::max(worst, std::abs(direct - via_balance) / via_balance);
            }
        }
        WorkingParams small_u{Model::DP, 1.0, 4.0 * 1e-3};  // u = beta/4 = 1e-3
        const double t_ratio = effective_temperature(small_u) * small_u.beta;
        WorkingParams near_crit{Model::DP, 1.0, critical_beta_w(Model::DP) * (1.0 - 1e-4)};
        const double t_div = effective_temperature(near_crit) * near_crit.beta;
        const bool pass = worst <= 1e-10 && std::abs(t_ratio - 1.0) <= 1e-3 && t_div > 100.0;
        out.push_back(check("effective temperature consistency / asymptote / divergence", pass,
                            "max rel " + fmt(worst) + ", |T/T_beta-1|=" + fmt(t_ratio - 1.0) +
                                ", T/T_beta near crit " + fmt(t_div)));
    }

    // friction rate: eta = beta P0 and Gamma -> (2/3) eta as beta -> 0
    {
        bool pass = true;
        double worst = 0.0;
        for (Model model : {Model::DP, Model::CSL}) {
            WorkingParams wp{model, 1.0, 1.3};
            pass = pass && friction_rate(wp) == wp.beta * beta0_power(wp);
            WorkingParams tiny{model, 1.0, 1e-9};
            const double ratio =
                power_gamma_closed_form(tiny).Gamma / friction_rate(tiny) / (2.0 / 3.0);
            worst = std::max(worst, std::abs(ratio - 1.0));
        }
        out.push_back(check("eta = beta P0; Gamma ~ (2/3) eta at small beta",
                            pass && worst <= 1e-8, "ratio err " + fmt(worst)));
    }

    // dimensionless identities and the nondimensionalize round trip
    {
        Xoshiro256pp rng(mix64(seed ^ 0x5eedu));
        double worst = 0.0;
        for (int i = 0; i < 200; ++i) {
            ModelParams p;
            p.model = i % 2 == 0 ? Model::DP : Model::CSL;
            p.sigma = std::pow(10.0, -12.0 + 6.0 * rng.uniform01());
            p.mass = std::pow(10.0, -28.0 + 4.0 * rng.uniform01());
            p.gamma_csl = std::pow(10.0, -20.0 + 10.0 * rng.uniform01());
            const auto d0 = nondimensionalize(p, pc);
            p.beta = rng.uniform01() * 4.0 / d0.e_sigma;
            const auto d = nondimensionalize(p, pc);
            worst = std::max(worst, std::abs(d.x_beta_sq - 2.0 * p.beta * d.e_sigma) /
                                        std::max(d.x_beta_sq, 1e-30));
            const auto back = redimensionalize(d, p.model, p.mass, pc);
            worst = std::max(worst, std::abs(back.sigma - p.sigma) / p.sigma);
            worst = std::max(worst, std::abs(back.beta - p.beta) / std::max(p.beta, 1e-30));
            if (p.model == Model::CSL)
                worst = std::max(worst, std::abs(back.gamma_csl - p.gamma_csl) / p.gamma_csl);
        }
        out.push_back(check("x_beta^2 = 2 beta E_sigma; nondimensionalize round trip", worst <= 1e-14,
                            "max rel err " + fmt(worst)));
    }

    // jump-rate density integrates to the balance P - Gamma H at every p
    {
        double worst = 0.0;
        for (Model model : {Model::DP, Model::CSL}) {
            WorkingParams wp{model, 1.0, 1.8};
            const auto cf = power_gamma_closed_form(wp);
            for (double p_norm : {0.0, 1.2, 3.0}) {
                const double expected = cf.P - cf.Gamma * 0.5 * p_norm * p_norm;
                const double numeric = drift_by_quadrature(wp, p_norm);
                worst = std::max(worst, std::abs(numeric - expected) / std::abs(expected));
            }
        }
        out.push_back(check("jump density drift equals P - Gamma H (state independent)",
                            worst <= 1e-8, "max rel err " + fmt(worst)));
    }

    // reduced-size ensemble against the exact energy curve
    {
        WorkingParams wp{Model::DP, 1.0, 2.0};
        const double horizon = 40.0;
        std::vector<double> grid;
        for (int i = 1; i <= 8; ++i) grid.push_back(horizon * i / 8.0);
        const auto stats = run_ensemble({0, 0, 0}, wp, horizon, grid, 1500, mix64(seed + 1), 2);
        double worst_z = 0.0;
        for (size_t i = 0; i < grid.size(); ++i) {
            const double exact = exact_energy_trajectory(0.0, wp, grid[i]);
            worst_z = std::max(worst_z,
                               std::abs(stats.mean_H[i] - exact) / std::max(stats.stderr_H[i], 1e-300));
        }
        out.push_back(check("ensemble mean energy tracks exact balance ODE (1500 traj)",
                            worst_z <= 4.0, "worst |z| " + fmt(worst_z)));
    }

    // toy model: OU equilibrium second moment
    {
        ToyParams tp{1.0, 2.0, 1.0};
        std::vector<double> grid{12.0};
        const auto res = toy_langevin_ensemble(tp, 3000, 12.0, 0.05, grid, mix64(seed + 2),
                                               ToyScheme::exact_ou, 2);
        double sum_p2 = 0.0;
        for (const auto& p : res.final_momenta) sum_p2 += dot(p, p);
        const double mean_p2 = sum_p2 / res.final_momenta.size();
        const double rel = std::abs(mean_p2 - 3.0 * tp.mass / tp.beta) / (3.0 * tp.mass / tp.beta);
        out.push_back(check("toy OU equilibrium <p^2> = 3m/beta (3000 traj)", rel <= 0.05,
                            "rel err " + fmt(rel)));
    }

    // determinism: thread count must not change a single bit
    {
        WorkingParams wp{Model::CSL, 1.0, 1.5};
        std::vector<double> grid{5.0, 10.0, 20.0};
        const auto a = run_ensemble({0, 0, 0}, wp, 20.0, grid, 200, mix64(seed + 3), 1);
        const auto b = run_ensemble({0, 0, 0}, wp, 20.0, grid, 200, mix64(seed + 3), 2);
        const bool same =
            std::memcmp(a.mean_H.data(), b.mean_H.data(), a.mean_H.size() * sizeof(double)) == 0 &&
            std::memcmp(a.stderr_H.data(), b.stderr_H.data(),
                        a.stderr_H.size() * sizeof(double)) == 0;
        out.push_back(check("ensemble bitwise identical across thread counts", same,
                            same ? "" : "mismatch"));
    }

    return out;
}

}  // namespace collapse
