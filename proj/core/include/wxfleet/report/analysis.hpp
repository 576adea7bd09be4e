#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "wxfleet/config.hpp"
#include "wxfleet/panel.hpp"
#include "wxfleet/report/checks.hpp"
#include "wxfleet/sim.hpp"
#include "wxfleet/stats.hpp"

namespace wxfleet::report {

/// Traditional versus weather-aware comparison of one metric.
struct SignificanceRow {
  std::string metric;
  stats::TTest test;  ///< traditional minus weather-aware
  double cohens_d = 0.0;
};

struct AnalysisResult {
  SummaryTable table1;
  std::vector<stats::CorrelationEntry> correlations;
  std::vector<SignificanceRow> significance;
  DecompositionResult decomposition;
  std::vector<Check> checks;
};

AnalysisResult analyze(const SimConfig& config, const PanelDataset& cross_sectional, ToleranceProfile profile);

/// Writes table1.csv, table2.csv, table4.csv, skill_gap.csv, mode_comparison.csv,
/// correlation_matrix.csv, significance.csv and market_multipliers.csv; returns
/// the names written.
std::vector<std::string> write_analysis(const AnalysisResult& result, const SimConfig& config,
                                        const std::filesystem::path& dir);

}  // namespace wxfleet::report
