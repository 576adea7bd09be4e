#pragma once

#include <span>
#include <string>
#include <vector>

#include "wxfleet/panel.hpp"

namespace wxfleet::stats {

struct CorrelationEntry {
  std::string x_name;
  std::string y_name;
  double r = 0.0;
  double p_value = 1.0;
  std::size_t n = 0;
  std::string error;  ///< non-empty when the entry could not be computed

  bool ok() const noexcept { return error.empty(); }
};

/// Pearson r with the two-sided Student-t p-value on n - 2 df. Throws
/// ValidationError on length mismatch, fewer than 3 points or zero variance.
CorrelationEntry pearson(std::span<const double> x, std::span<const double> y);

struct TTest {
  double t = 0.0;
  double df = 0.0;
  double p_value = 1.0;
};

/// Welch's unequal-variance t-test of mean(a) - mean(b).
TTest welch_t(std::span<const double> a, std::span<const double> b);

/// (mean(a) - mean(b)) / pooled SD.
double cohens_d(std::span<const double> a, std::span<const double> b);

double mean(std::span<const double> x);
/// Sample variance (n - 1 denominator).
double variance(std::span<const double> x);

/// "***", "**", "*" or "" at 0.001 / 0.01 / 0.05.
std::string significance_stars(double p);

inline const std::vector<std::string> kWeatherVariables{"rain_mm", "extreme_temp_share", "low_visibility_share",
                                                        "high_wind_share"};
inline const std::vector<std::string> kPerformanceMetrics{"revenue_per_min", "wait_min", "utilization",
                                                          "daily_earnings"};

/// Weather x performance correlations on the cross-sectional panel, pooled
/// within operational mode (every column demeaned by mode before correlating).
/// Rain enters as intensity; the other three as event indicators. Entries
/// that cannot be computed carry the reason in `error`.
std::vector<CorrelationEntry> correlation_matrix(const PanelDataset& panel);

}  // namespace wxfleet::stats
