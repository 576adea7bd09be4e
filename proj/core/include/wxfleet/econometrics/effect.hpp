#pragma once

#include <string>

#include "wxfleet/econometrics/regression.hpp"

namespace wxfleet::econometrics {

/// One row of the causal summary.
struct EffectEstimate {
  std::string method;
  double effect = 0.0;  ///< yen/min, or yen/min per utilization point for IV
  double se = 0.0;
  double t = 0.0;
  double p_value = 1.0;
  double df = 0.0;
  double ci_low = 0.0;  ///< 95%
  double ci_high = 0.0;
  double baseline = 0.0;    ///< untreated outcome mean of the estimation sample
  double pct_impact = 0.0;  ///< effect / baseline * 100; NaN when not meaningful
  std::size_t n = 0;
  std::string notes;
};

/// Fills t, p and the 95% interval from effect, se and df (Student t).
void finish_estimate(EffectEstimate& e);

/// Estimate for `name` taken from a fitted regression.
EffectEstimate estimate_from(const RegressionResult& r, const std::string& name, std::string method);

/// Mean of `outcome` over rows where `treatment` is 0; NaN when there are none.
double untreated_mean(const Frame& frame, const std::string& outcome, const std::string& treatment = "treated");

/// Rollout covariates that vary within driver and day.
inline const std::vector<std::string> kWeatherCovariates{"rain_mm", "heavy_rain_share", "extreme_temp_share",
                                                         "low_visibility_share", "high_wind_share"};

}  // namespace wxfleet::econometrics
