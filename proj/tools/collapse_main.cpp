// Numerical engine for dissipative extensions of the Diosi-Penrose and CSL
// spontaneous collapse models: heating/dissipation rates, equilibrium
// temperatures, and an exact momentum-jump Monte Carlo.
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "collapse/experiment.hpp"
#include "collapse/quadrature.hpp"
#include "collapse/version.hpp"

namespace {

struct CliOptions {
    std::string config_path;
    std::string out_dir = "out";
    std::optional<std::uint64_t> seed;
    int threads = 1;
};

void add_common(CLI::App* cmd, CliOptions& opt) {
    cmd->add_option("--config", opt.config_path, "flat key=value config file")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--out", opt.out_dir, "output directory (default: out)");
    cmd->add_option("--seed", opt.seed, "override the config master seed");
    cmd->add_option("--threads", opt.threads, "worker threads for ensembles")
        ->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dissipative DP/CSL collapse model engine"};
    app.set_version_flag("--version", collapse::kVersion);
    app.require_subcommand(1);

    CliOptions opt;
    const std::pair<const char*, collapse::Command> commands[] = {
        {"rates", collapse::Command::rates},       {"sweep", collapse::Command::sweep},
        {"simulate", collapse::Command::simulate}, {"toy", collapse::Command::toy},
        {"validate", collapse::Command::validate},
    };
    for (const auto& [name, cmd] : commands) {
        auto* sub = app.add_subcommand(name);
        add_common(sub, opt);
    }

    CLI11_PARSE(app, argc, argv);

    collapse::Command command = collapse::Command::rates;
    for (const auto& [name, cmd] : commands)
        if (app.get_subcommand(name)->parsed()) command = cmd;

    try {
        auto config = collapse::Config::parse_file(opt.config_path);
        auto spec = collapse::parse_experiment(command, config);
        if (opt.seed) spec.seed = *opt.seed;
        spec.threads = opt.threads;
        spec.out_dir = opt.out_dir;
        return collapse::run_experiment(spec);
    } catch (const collapse::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const collapse::NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
