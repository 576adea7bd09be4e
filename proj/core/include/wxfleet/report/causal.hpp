#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wxfleet/config.hpp"
#include "wxfleet/econometrics/did.hpp"
#include "wxfleet/econometrics/event_study.hpp"
#include "wxfleet/econometrics/iv.hpp"
#include "wxfleet/econometrics/robustness.hpp"
#include "wxfleet/panel.hpp"
#include "wxfleet/report/checks.hpp"

namespace wxfleet::report {

struct CausalOptions {
  int placebo_draws = 100;
  std::vector<double> rdd_bandwidths{5, 7, 10, 12, 15};
};

struct CausalResult {
  /// Yen-per-minute rows in table order: before_after, event_study, did, rdd, psm.
  std::vector<std::pair<std::string, std::optional<econometrics::EffectEstimate>>> yen_rows;
  std::optional<econometrics::IvEstimate> iv;
  std::optional<econometrics::EventStudyResult> event_study;
  std::optional<econometrics::ParallelTrendsResult> parallel_trends;
  std::optional<econometrics::PlaceboReport> placebo;
  std::vector<econometrics::HeterogeneityRow> heterogeneity;
  std::vector<std::pair<double, std::optional<econometrics::EffectEstimate>>> rdd_bandwidths;
  std::map<std::string, std::string> errors;  ///< estimator -> message
  std::vector<Check> checks;
};

/// Every estimator runs in isolation: a failure is recorded in `errors` and
/// the remaining rows are still produced.
CausalResult run_causal(const SimConfig& config, const PanelDataset& rollout, ToleranceProfile profile,
                        const CausalOptions& options = {});

/// Writes table5.csv, event_study.csv, parallel_trends.csv, placebo.csv,
/// heterogeneity.csv and rdd_bandwidth.csv; returns the names written.
std::vector<std::string> write_causal(const CausalResult& result, const std::filesystem::path& dir);

}  // namespace wxfleet::report
