#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "wxfleet/config.hpp"
#include "wxfleet/economics.hpp"
#include "wxfleet/report/checks.hpp"

namespace wxfleet::report {

inline const std::vector<std::string> kStages{"simulate", "analyze", "causal", "econ"};

struct PipelineOptions {
  std::filesystem::path out_dir = "out";
  std::set<std::string> skip;  ///< stage names; only honoured by cmd_all
  ToleranceProfile profile = ToleranceProfile::Default;
  double discount_rate = 0.05;
  int horizon_years = 5;
  std::optional<int> working_days;  ///< defaults to the config value
  int placebo_draws = 100;
};

struct CommandResult {
  std::vector<Check> checks;
  std::vector<std::string> files;  ///< relative to out_dir
  bool passed() const { return all_gating_passed(checks); }
};

/// cross_sectional.csv, rollout.csv, weather.csv, fleet.csv.
CommandResult cmd_simulate(const SimConfig& config, const PipelineOptions& options);
/// Reads cross_sectional.csv from out_dir.
CommandResult cmd_analyze(const SimConfig& config, const PipelineOptions& options);
/// Reads rollout.csv from out_dir.
CommandResult cmd_causal(const SimConfig& config, const PipelineOptions& options);
/// econ_report.json and sensitivity.csv. The simulated scenario uses
/// cross_sectional.csv when it exists in out_dir.
CommandResult cmd_econ(const SimConfig& config, const PipelineOptions& options);
/// The four stages in order (minus skipped ones), then checks.csv.
CommandResult cmd_all(const SimConfig& config, const PipelineOptions& options);

/// econ_report.json contents for the given scenarios.
std::string econ_report_json(const std::vector<economics::EconReport>& reports, int working_days,
                             const std::vector<std::string>& notes);

}  // namespace wxfleet::report
