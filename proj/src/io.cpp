#include "collapse/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "collapse/version.hpp"

namespace collapse {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string format_double_exact(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string hash_hex(std::uint64_t h) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string csv_preamble(const ArtifactMeta& meta) {
    std::string s;
    s += "# version=" + std::string(kVersion) + "\n";
    s += "# command=" + meta.command + "\n";
    s += "# config_hash=" + hash_hex(meta.config_hash) + "\n";
    s += "# seed=" + std::to_string(meta.seed) + "\n";
    s += "# units=" + meta.units + "\n";
    return s;
}

std::string rate_reports_csv(const std::vector<RateReport>& reports, const ArtifactMeta& meta) {
    std::string s = csv_preamble(meta);
    s += "model,sigma,beta,x_beta_sq,P,Gamma,eta,E_inf,T_noise,regime\n";
    for (const auto& r : reports) {
        s += to_string(r.model);
        s += ',';
        s += format_double(r.sigma) + ',' + format_double(r.beta) + ',' +
             format_double(r.x_beta_sq) + ',' + format_double(r.P) + ',' +
             format_double(r.Gamma) + ',' + format_double(r.eta) + ',';
        s += r.E_inf ? format_double(*r.E_inf) : "";
        s += ',';
        s += r.T_noise ? format_double(*r.T_noise) : "";
        s += ',';
        s += to_string(r.regime);
        s += '\n';
    }
    return s;
}

nlohmann::ordered_json rate_report_json(const RateReport& r) {
    nlohmann::ordered_json j;
    j["model"] = to_string(r.model);
    j["sigma"] = r.sigma;
    j["beta"] = r.beta;
    j["x_beta_sq"] = r.x_beta_sq;
    j["P"] = r.P;
    j["Gamma"] = r.Gamma;
    j["eta"] = r.eta;
    if (r.E_inf) j["E_inf"] = *r.E_inf;
    if (r.T_noise) j["T_noise"] = *r.T_noise;
    j["regime"] = to_string(r.regime);
    j["working_units"] = r.working_units;
    return j;
}

std::string ensemble_csv(const EnsembleStats& stats, const std::vector<double>* exact_overlay,
                         const ArtifactMeta& meta) {
    if (exact_overlay && exact_overlay->size() != stats.time_grid.size())
        throw std::invalid_argument("exact overlay size mismatch");
    std::string s = csv_preamble(meta);
    s += "t,mean_H,stderr_H,n_traj";
    if (exact_overlay) s += ",exact_H";
    s += '\n';
    for (size_t i = 0; i < stats.time_grid.size(); ++i) {
        s += format_double(stats.time_grid[i]) + ',' + format_double(stats.mean_H[i]) + ',' +
             format_double(stats.stderr_H[i]) + ',' + std::to_string(stats.n_traj);
        if (exact_overlay) s += ',' + format_double((*exact_overlay)[i]);
        s += '\n';
    }
    return s;
}

std::string trajectory_csv(const Trajectory& traj, const ArtifactMeta& meta) {
    std::string s = csv_preamble(meta);
    s += "# trajectory_seed=" + std::to_string(traj.seed) + "\n";
    if (traj.truncated) s += "# truncated=1\n";
    s += "t,px,py,pz,H\n";
    for (const auto& state : traj.states) {
        s += format_double(state.t) + ',' + format_double(state.p[0]) + ',' +
             format_double(state.p[1]) + ',' + format_double(state.p[2]) + ',' +
             format_double(state.kinetic_energy()) + '\n';
    }
    return s;
}

nlohmann::ordered_json meta_json(const ArtifactMeta& meta) {
    nlohmann::ordered_json j;
    j["version"] = kVersion;
    j["command"] = meta.command;
    j["config_hash"] = hash_hex(meta.config_hash);
    j["seed"] = meta.seed;
    j["units"] = meta.units;
    return j;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

void write_json_file(const std::string& path, const nlohmann::ordered_json& j) {
    write_text_file(path, j.dump(2) + "\n");
}

}  // namespace collapse
