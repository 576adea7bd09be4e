#pragma once

#include <string>
#include <vector>

#include "wxfleet/econometrics/effect.hpp"

namespace wxfleet::econometrics {

struct EventStudyOptions {
  std::string outcome = "revenue_per_min";
  int window = 30;      ///< k = -window..window; farther days are binned into the endpoints
  int reference = -1;   ///< omitted relative day
  std::vector<std::string> covariates = kWeatherCovariates;
};

struct EventCoefficient {
  int k = 0;
  double coef = 0.0;  ///< 0 for the reference day
  double se = 0.0;
  double t = 0.0;
  double p_value = 1.0;
  std::size_t n_obs = 0;  ///< records in the (binned) cell
  bool reference = false;
  bool dropped = false;   ///< empty cell; coef/se are NaN
};

struct EventStudyResult {
  std::vector<EventCoefficient> coefficients;  ///< one per k, ascending
  WaldTest pre_trend;                          ///< all k < reference jointly zero
  EffectEstimate post_average;                 ///< mean of beta_0..beta_window
  std::vector<std::string> notes;
};

/// Relative-day dummies with driver and day fixed effects, clustered by
/// driver. Uses `relative_day`, `driver_id`, `day`.
EventStudyResult event_study(const Frame& rollout, const EventStudyOptions& options = {});

/// Raw mean of treated minus untreated driver-days, clustered by driver.
EffectEstimate before_after(const Frame& rollout, const std::string& outcome = "revenue_per_min");

}  // namespace wxfleet::econometrics
