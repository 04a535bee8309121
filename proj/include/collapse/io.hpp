#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "collapse/jump_kinetics.hpp"
#include "collapse/rates.hpp"

namespace collapse {

/// Provenance stamped into every artifact: enough to re-run the experiment.
struct ArtifactMeta {
    std::string command;
    std::uint64_t config_hash = 0;
    std::uint64_t seed = 0;
    std::string units;  // "si" or "working"
};

std::string format_double(double v);          // %.12g, data columns
std::string format_double_exact(double v);    // %.17g, round-trip exact
std::string hash_hex(std::uint64_t h);

std::string csv_preamble(const ArtifactMeta& meta);

/// One row per report, columns:
/// model,sigma,beta,x_beta_sq,P,Gamma,eta,E_inf,T_noise,regime.
/// E_inf / T_noise are left empty off the dissipative branch.
std::string rate_reports_csv(const std::vector<RateReport>& reports, const ArtifactMeta& meta);
nlohmann::ordered_json rate_report_json(const RateReport& report);

/// Columns t,mean_H,stderr_H,n_traj plus an exact_H overlay when provided.
std::string ensemble_csv(const EnsembleStats& stats, const std::vector<double>* exact_overlay,
                         const ArtifactMeta& meta);

/// Columns t,px,py,pz,H.
std::string trajectory_csv(const Trajectory& traj, const ArtifactMeta& meta);

nlohmann::ordered_json meta_json(const ArtifactMeta& meta);

void write_text_file(const std::string& path, const std::string& content);
void write_json_file(const std::string& path, const nlohmann::ordered_json& j);

}  // namespace collapse
