#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "collapse/config.hpp"
#include "collapse/friction_toy.hpp"
#include "collapse/jump_kinetics.hpp"
#include "collapse/rates.hpp"

namespace collapse {

enum class Command { rates, sweep, simulate, toy, validate };
const char* to_string(Command c);

enum class UnitsMode { si, working };

struct SweepSettings {
    std::string axis;  // beta | T_beta | sigma | x_beta_sq
    double min = 0.0;
    double max = 0.0;
    int n_points = 0;
    bool log_scale = false;
};

struct McSettings {
    std::uint64_t n_traj = 1000;
    double horizon = 10.0;  // seconds in SI mode, working time otherwise
    int grid_points = 10;
    Vec3 p0{0.0, 0.0, 0.0};
    std::uint64_t max_jumps = 10'000'000;
    double dt = 0.0;        // toy integrator step
    double split_dt = 0.0;  // thermostat splitting window (simulate + env)
    std::string toy_scheme = "exact_ou";
    int export_trajectories = 0;
};

/// A fully resolved experiment: command, parameters, and run settings.
struct ExperimentSpec {
    Command command = Command::rates;
    UnitsMode units = UnitsMode::si;
    PhysicalConstants constants;

    std::optional<ModelParams> si_params;  // set in SI mode
    WorkingParams wp;                      // always usable
    std::optional<EnvironmentParams> env;  // units follow `units`
    std::optional<SweepSettings> sweep;
    McSettings mc;
    std::optional<ToyParams> toy;

    std::uint64_t seed = 0;
    int threads = 1;
    std::string out_dir = "out";
    std::uint64_t config_hash = 0;
};

/// Parses and validates a config for the given command. CLI overrides for
/// seed/threads are applied afterwards by the caller. Unknown or missing
/// keys raise ConfigError with line/key diagnostics.
ExperimentSpec parse_experiment(Command command, Config& config);

/// Executes the experiment and writes its artifacts under spec.out_dir.
/// Returns the process exit status (nonzero for failed validation).
int run_experiment(const ExperimentSpec& spec);

// Individual runners, exposed for tests.
std::vector<RateReport> sweep_reports(const ExperimentSpec& spec);
EnsembleStats simulate_ensemble(const ExperimentSpec& spec, std::vector<double>* exact_overlay);

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Invariant suite behind the `validate` command: every module-level
/// identity at reduced Monte Carlo sizes. seed feeds the stochastic checks.
std::vector<CheckResult> run_validation_suite(std::uint64_t seed);

}  // namespace collapse
