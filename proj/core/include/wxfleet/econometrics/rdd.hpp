#pragma once

#include <string>
#include <vector>

#include "wxfleet/econometrics/effect.hpp"

namespace wxfleet::econometrics {

struct RddOptions {
  std::string outcome = "revenue_per_min";
  std::string running = "relative_day";
  double cutoff = 0.0;
  double bandwidth = 10.0;  ///< uniform kernel, |running - cutoff| <= bandwidth
  int order = 1;            ///< 1 or 2, separate slopes each side
  std::vector<std::string> covariates = kWeatherCovariates;
  bool driver_fe = true;
  bool time_fe = false;
  CovarianceType covariance = CovarianceType::CR1;
  std::string cluster = "driver_id";
};

/// Jump at the cutoff of a local polynomial fit. Treatment is running >= cutoff.
/// Throws ValidationError for bandwidth < 2 or order outside {1, 2}, and
/// EstimationError when a side of the window has too few observations.
EffectEstimate local_polynomial_jump(const Frame& frame, const RddOptions& options);

inline EffectEstimate rdd(const Frame& rollout, const RddOptions& options = {}) {
  return local_polynomial_jump(rollout, options);
}

}  // namespace wxfleet::econometrics
