#include "collapse/experiment.hpp"

#include <cmath>
#include <filesystem>
#include <iostream>

#include "collapse/io.hpp"

namespace collapse {

namespace {

ModelParams parse_si_params(Config& cfg) {
    ModelParams p;
    p.model = model_from_string(cfg.require_string("model"));
    p.sigma = cfg.require_number("sigma_m");
    p.mass = cfg.require_number("mass_kg");
    if (p.model == Model::CSL) p.gamma_csl = cfg.require_number("gamma_csl_m3_per_s");

    const auto beta = cfg.take_number("beta_per_J");
    const auto t_beta = cfg.take_number("T_beta_K");
    if (beta && t_beta)
        throw ConfigError(cfg.origin() + ": beta_per_J and T_beta_K are mutually exclusive");
    if (!beta && !t_beta)
        throw ConfigError(cfg.origin() + ": one of beta_per_J or T_beta_K is required");
    PhysicalConstants pc;
    p.beta = beta ? *beta : 1.0 / (pc.kB * *t_beta);
    p.validate();
    return p;
}

WorkingParams parse_working_params(Config& cfg) {
    WorkingParams w;
    w.model = model_from_string(cfg.require_string("model"));
    w.coupling = cfg.require_number("coupling");
    const auto beta = cfg.take_number("beta_w");
    const auto x2 = cfg.take_number("x_beta_sq");
    if (beta && x2)
        throw ConfigError(cfg.origin() + ": beta_w and x_beta_sq are mutually exclusive");
    w.beta = beta ? *beta : (x2 ? 2.0 * *x2 : 0.0);
    w.validate();
    return w;
}

std::optional<EnvironmentParams> parse_env(Config& cfg, UnitsMode units) {
    const char* t_key = units == UnitsMode::si ? "env_T_K" : "env_T";
    const char* g_key = units == UnitsMode::si ? "env_Gamma_per_s" : "env_Gamma";
    const auto t = cfg.take_number(t_key);
    const auto g = cfg.take_number(g_key);
    if (!t && !g) return std::nullopt;
    if (!t || !g)
        throw ConfigError(cfg.origin() + ": environment needs both " + t_key + " and " + g_key);
    EnvironmentParams env;
    env.T_env = *t;
    env.Gamma_env = *g;
    env.validate();
    return env;
}

SweepSettings parse_sweep(Config& cfg) {
    SweepSettings s;
    s.axis = cfg.require_string("sweep_param");
    if (s.axis != "beta" && s.axis != "T_beta" && s.axis != "sigma" && s.axis != "x_beta_sq")
        throw ConfigError(cfg.origin() + ": sweep_param must be beta, T_beta, sigma or x_beta_sq");
    s.min = cfg.require_number("sweep_min");
    s.max = cfg.require_number("sweep_max");
    s.n_points = static_cast<int>(cfg.require_number("sweep_points"));
    const auto scale = cfg.take_string("sweep_scale").value_or("linear");
    if (scale != "linear" && scale != "log")
        throw ConfigError(cfg.origin() + ": sweep_scale must be linear or log");
    s.log_scale = scale == "log";
    if (s.n_points < 2) throw ConfigError(cfg.origin() + ": sweep_points must be >= 2");
    if (!(s.max > s.min)) throw ConfigError(cfg.origin() + ": sweep_max must exceed sweep_min");
    if (s.log_scale && s.min <= 0.0)
        throw ConfigError(cfg.origin() + ": log sweep needs sweep_min > 0");
    return s;
}

McSettings parse_mc(Config& cfg) {
    McSettings mc;
    if (auto v = cfg.take_number("mc_n_traj")) mc.n_traj = static_cast<std::uint64_t>(*v);
    if (auto v = cfg.take_number("mc_horizon")) mc.horizon = *v;
    if (auto v = cfg.take_number("mc_grid_points")) mc.grid_points = static_cast<int>(*v);
    if (auto v = cfg.take_number("mc_p0_x")) mc.p0[0] = *v;
    if (auto v = cfg.take_number("mc_p0_y")) mc.p0[1] = *v;
    if (auto v = cfg.take_number("mc_p0_z")) mc.p0[2] = *v;
    if (auto v = cfg.take_number("mc_max_jumps")) mc.max_jumps = static_cast<std::uint64_t>(*v);
    if (auto v = cfg.take_number("mc_dt")) mc.dt = *v;
    if (auto v = cfg.take_number("mc_split_dt")) mc.split_dt = *v;
    if (auto v = cfg.take_string("toy_scheme")) mc.toy_scheme = *v;
    if (auto v = cfg.take_number("mc_export_trajectories"))
        mc.export_trajectories = static_cast<int>(*v);
    if (!(mc.horizon > 0.0)) throw ConfigError("mc_horizon must be > 0");
    if (mc.grid_points < 1) throw ConfigError("mc_grid_points must be >= 1");
    return mc;
}

std::vector<double> uniform_grid(double horizon, int n_points) {
    std::vector<double> grid(n_points);
    for (int i = 0; i < n_points; ++i) grid[i] = horizon * (i + 1) / n_points;
    return grid;
}

ArtifactMeta make_meta(const ExperimentSpec& spec) {
    ArtifactMeta meta;
    meta.command = to_string(spec.command);
    meta.config_hash = spec.config_hash;
    meta.seed = spec.seed;
    meta.units = spec.units == UnitsMode::si ? "si" : "working";
    return meta;
}

nlohmann::ordered_json params_json(const ExperimentSpec& spec) {
    nlohmann::ordered_json j;
    if (spec.si_params) {
        const auto& p = *spec.si_params;
        j["model"] = to_string(p.model);
        j["sigma_m"] = p.sigma;
        j["mass_kg"] = p.mass;
        j["beta_per_J"] = p.beta;
        if (p.model == Model::CSL) {
            j["gamma_csl_m3_per_s"] = p.gamma_csl;
            j["lambda_csl_per_s"] = p.lambda_csl(spec.constants);
        }
    }
    j["working"] = {{"model", to_string(spec.wp.model)},
                    {"coupling", spec.wp.coupling},
                    {"beta_w", spec.wp.beta},
                    {"x_beta_sq", spec.wp.x_beta_sq()}};
    if (spec.env) {
        j["environment"] = {{"T_env", spec.env->T_env}, {"Gamma_env", spec.env->Gamma_env}};
    }
    return j;
}

}  // namespace

const char* to_string(Command c) {
    switch (c) {
        case Command::rates: return "rates";
        case Command::sweep: return "sweep";
        case Command::simulate: return "simulate";
        case Command::toy: return "toy";
        default: return "validate";
    }
}

ExperimentSpec parse_experiment(Command command, Config& cfg) {
    ExperimentSpec spec;
    spec.command = command;
    spec.config_hash = cfg.content_hash();
    if (auto v = cfg.take_u64("seed")) spec.seed = *v;

    const std::string units = cfg.take_string("units").value_or("si");
    if (units != "si" && units != "working")
        throw ConfigError(cfg.origin() + ": units must be si or working");
    spec.units = units == "si" ? UnitsMode::si : UnitsMode::working;

    if (command == Command::toy) {
        ToyParams tp;
        tp.diffusion = cfg.require_number("toy_D");
        tp.beta = cfg.require_number("toy_beta");
        if (auto v = cfg.take_number("toy_mass")) tp.mass = *v;
        tp.validate();
        spec.toy = tp;
        spec.mc = parse_mc(cfg);
        if (!(spec.mc.dt > 0.0)) throw ConfigError(cfg.origin() + ": toy runs need mc_dt > 0");
    } else if (command == Command::validate) {
        // validate runs on internal parameter grids; only seed/units consumed
    } else {
        if (spec.units == UnitsMode::si) {
            spec.si_params = parse_si_params(cfg);
            spec.wp = WorkingParams::from_si(*spec.si_params, spec.constants);
        } else {
            spec.wp = parse_working_params(cfg);
        }
        spec.env = parse_env(cfg, spec.units);
        if (command == Command::sweep) spec.sweep = parse_sweep(cfg);
        if (command == Command::simulate) spec.mc = parse_mc(cfg);
    }

    cfg.reject_unconsumed();
    return spec;
}

std::vector<RateReport> sweep_reports(const ExperimentSpec& spec) {
    const auto& sw = *spec.sweep;
    std::vector<RateReport> reports;
    reports.reserve(sw.n_points);
    for (int i = 0; i < sw.n_points; ++i) {
        const double f = static_cast<double>(i) / (sw.n_points - 1);
        const double v = sw.log_scale ? sw.min * std::pow(sw.max / sw.min, f)
                                      : sw.min + (sw.max - sw.min) * f;
        if (spec.units == UnitsMode::si) {
            ModelParams p = *spec.si_params;
            if (sw.axis == "beta") p.beta = v;
            else if (sw.axis == "T_beta") p.beta = 1.0 / (spec.constants.kB * v);
            else if (sw.axis == "sigma") p.sigma = v;
            else p.beta = v / (2.0 * nondimensionalize(p, spec.constants).e_sigma);
            reports.push_back(power_gamma_closed_form(p, spec.constants));
        } else {
            WorkingParams w = spec.wp;
            if (sw.axis == "beta") w.beta = v;
            else if (sw.axis == "T_beta") w.beta = 1.0 / v;
            else if (sw.axis == "x_beta_sq") w.beta = 2.0 * v;
            else throw ConfigError("sigma sweep requires units = si");
            reports.push_back(power_gamma_closed_form(w));
        }
    }
    return reports;
}

EnsembleStats simulate_ensemble(const ExperimentSpec& spec, std::vector<double>* exact_overlay) {
    // Simulation always runs in working units; SI inputs are converted here.
    double horizon = spec.mc.horizon;
    WorkingParams wp = spec.wp;
    OuThermostat bath{};
    bool with_bath = false;
    if (spec.env) {
        double t_env_w = spec.env->T_env;
        double gamma_env_w = spec.env->Gamma_env;
        if (spec.units == UnitsMode::si) {
            const UnitSystem u = UnitSystem::make(*spec.si_params, spec.constants);
            t_env_w = spec.constants.kB * spec.env->T_env / u.energy_unit;
            gamma_env_w = spec.env->Gamma_env * u.time_unit;
        }
        bath.theta = 0.5 * gamma_env_w;
        bath.diffusion = bath.theta * t_env_w;
        with_bath = bath.theta > 0.0;
    }
    if (spec.units == UnitsMode::si)
        horizon = UnitSystem::make(*spec.si_params, spec.constants).time_to_working(horizon);

    const auto grid = uniform_grid(horizon, spec.mc.grid_points);
    EnsembleStats stats;
    if (with_bath) {
        double split = spec.mc.split_dt;
        if (!(split > 0.0)) split = horizon / (64.0 * spec.mc.grid_points);
        // snap to an integer number of windows per grid cell
        const double cell = horizon / spec.mc.grid_points;
        const int per_cell = std::max(1, static_cast<int>(std::round(cell / split)));
        split = cell / per_cell;
        stats = run_ensemble_ou(spec.mc.p0, wp, bath, split, horizon, grid, spec.mc.n_traj,
                                spec.seed, spec.threads, spec.mc.max_jumps);
    } else {
        stats = run_ensemble(spec.mc.p0, wp, horizon, grid, spec.mc.n_traj, spec.seed,
                             spec.threads, spec.mc.max_jumps);
    }

    if (exact_overlay) {
        exact_overlay->clear();
        const RateReport r = power_gamma_closed_form(wp);
        double P = r.P, G = r.Gamma;
        if (with_bath) {
            P += 3.0 * bath.diffusion;
            G += bath.gamma_env();
        }
        const double e0 = 0.5 * dot(spec.mc.p0, spec.mc.p0);
        for (double t : grid) exact_overlay->push_back(exact_energy(e0, P, G, t));
    }
    return stats;
}

namespace {

int run_rates_cmd(const ExperimentSpec& spec) {
    const ArtifactMeta meta = make_meta(spec);
    RateReport report = spec.units == UnitsMode::si
                            ? power_gamma_closed_form(*spec.si_params, spec.constants)
                            : power_gamma_closed_form(spec.wp);
    std::filesystem::create_directories(spec.out_dir);
    write_text_file(spec.out_dir + "/rates.csv", rate_reports_csv({report}, meta));

    nlohmann::ordered_json j = meta_json(meta);
    j["params"] = params_json(spec);
    j["report"] = rate_report_json(report);
    if (spec.units == UnitsMode::si) {
        j["report"]["T0_K"] = threshold_temperature(*spec.si_params, spec.constants);
        j["report"]["beta_crit_per_J"] = critical_beta(*spec.si_params, spec.constants);
    } else {
        j["report"]["beta_crit_w"] = critical_beta_w(spec.wp.model);
    }
    if (spec.env) {
        const double kB = spec.units == UnitsMode::si ? spec.constants.kB : 1.0;
        const auto mixed = mixed_equilibrium(report, *spec.env, kB);
        j["mixed_equilibrium"] = {{"E_inf", mixed.E_inf}, {"T_eff", mixed.T_eff}};
    }
    write_json_file(spec.out_dir + "/rates.json", j);
    std::cout << rate_reports_csv({report}, meta);
    return 0;
}

int run_sweep_cmd(const ExperimentSpec& spec) {
    const auto reports = sweep_reports(spec);
    const ArtifactMeta meta = make_meta(spec);
    std::filesystem::create_directories(spec.out_dir);
    write_text_file(spec.out_dir + "/sweep.csv", rate_reports_csv(reports, meta));
    nlohmann::ordered_json j = meta_json(meta);
    j["params"] = params_json(spec);
    j["sweep"] = {{"axis", spec.sweep->axis},
                  {"min", spec.sweep->min},
                  {"max", spec.sweep->max},
                  {"points", spec.sweep->n_points},
                  {"scale", spec.sweep->log_scale ? "log" : "linear"}};
    write_json_file(spec.out_dir + "/sweep.json", j);
    std::cout << "wrote " << reports.size() << " sweep rows to " << spec.out_dir << "/sweep.csv\n";
    return 0;
}

int run_simulate_cmd(const ExperimentSpec& spec) {
    std::vector<double> overlay;
    const EnsembleStats stats = simulate_ensemble(spec, &overlay);
    const ArtifactMeta meta = make_meta(spec);
    std::filesystem::create_directories(spec.out_dir);
    write_text_file(spec.out_dir + "/ensemble.csv", ensemble_csv(stats, &overlay, meta));

    nlohmann::ordered_json j = meta_json(meta);
    j["params"] = params_json(spec);
    j["mc"] = {{"n_traj", spec.mc.n_traj},
               {"horizon", spec.mc.horizon},
               {"grid_points", spec.mc.grid_points},
               {"p0", {spec.mc.p0[0], spec.mc.p0[1], spec.mc.p0[2]}},
               {"max_jumps", spec.mc.max_jumps},
               {"master_seed", spec.seed},
               {"stream_derivation", "seed_i = mix64(master_seed + (i+1)*0x9e3779b97f4a7c15)"}};
    write_json_file(spec.out_dir + "/ensemble.json", j);

    if (spec.mc.export_trajectories > 0) {
        double horizon = spec.mc.horizon;
        if (spec.units == UnitsMode::si)
            horizon = UnitSystem::make(*spec.si_params, spec.constants).time_to_working(horizon);
        for (int i = 0; i < spec.mc.export_trajectories; ++i) {
            const auto traj = simulate_trajectory(spec.mc.p0, spec.wp, horizon,
                                                  stream_seed(spec.seed, i), spec.mc.max_jumps);
            write_text_file(spec.out_dir + "/trajectory_" + std::to_string(i) + ".csv",
                            trajectory_csv(traj, meta));
        }
    }
    std::cout << "wrote ensemble (" << stats.n_traj << " trajectories) to " << spec.out_dir
              << "/ensemble.csv\n";
    return 0;
}

int run_toy_cmd(const ExperimentSpec& spec) {
    const auto& tp = *spec.toy;
    ToyScheme scheme;
    if (spec.mc.toy_scheme == "euler") scheme = ToyScheme::euler;
    else if (spec.mc.toy_scheme == "exact_ou") scheme = ToyScheme::exact_ou;
    else throw ConfigError("toy_scheme must be euler or exact_ou");

    const auto grid = uniform_grid(spec.mc.horizon, spec.mc.grid_points);
    const auto result = toy_langevin_ensemble(tp, spec.mc.n_traj, spec.mc.horizon, spec.mc.dt,
                                              grid, spec.seed, scheme, spec.threads);
    std::vector<double> overlay;
    for (double t : grid) overlay.push_back(toy_energy_ode(0.0, tp, t));

    const ArtifactMeta meta = make_meta(spec);
    std::filesystem::create_directories(spec.out_dir);
    write_text_file(spec.out_dir + "/ensemble.csv", ensemble_csv(result.stats, &overlay, meta));

    std::string momenta = csv_preamble(meta) + "px,py,pz\n";
    for (const auto& p : result.final_momenta)
        momenta += format_double(p[0]) + ',' + format_double(p[1]) + ',' + format_double(p[2]) +
                   '\n';
    write_text_file(spec.out_dir + "/final_momenta.csv", momenta);

    nlohmann::ordered_json j = meta_json(meta);
    j["toy"] = {{"D", tp.diffusion},
                {"beta", tp.beta},
                {"mass", tp.mass},
                {"scheme", spec.mc.toy_scheme},
                {"dt", spec.mc.dt}};
    j["mc"] = {{"n_traj", spec.mc.n_traj},
               {"horizon", spec.mc.horizon},
               {"grid_points", spec.mc.grid_points},
               {"master_seed", spec.seed}};
    write_json_file(spec.out_dir + "/ensemble.json", j);
    std::cout << "wrote toy ensemble (" << result.stats.n_traj << " trajectories) to "
              << spec.out_dir << "/ensemble.csv\n";
    return 0;
}

int run_validate_cmd(const ExperimentSpec& spec) {
    const auto results = run_validation_suite(spec.seed);
    bool all_pass = true;
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (const auto& r : results) {
        all_pass = all_pass && r.pass;
        std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name;
        if (!r.detail.empty()) std::cout << " (" << r.detail << ")";
        std::cout << "\n";
        checks.push_back({{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
    }
    std::filesystem::create_directories(spec.out_dir);
    nlohmann::ordered_json j = meta_json(make_meta(spec));
    j["checks"] = checks;
    j["all_pass"] = all_pass;
    write_json_file(spec.out_dir + "/validate.json", j);
    std::cout << (all_pass ? "all checks passed\n" : "VALIDATION FAILED\n");
    return all_pass ? 0 : 1;
}

}  // namespace

int run_experiment(const ExperimentSpec& spec) {
    switch (spec.command) {
        case Command::rates: return run_rates_cmd(spec);
        case Command::sweep: return run_sweep_cmd(spec);
        case Command::simulate: return run_simulate_cmd(spec);
        case Command::toy: return run_toy_cmd(spec);
        default: return run_validate_cmd(spec);
    }
}

}  // namespace collapse
