#pragma once

#include <string>
#include <vector>

#include "wxfleet/econometrics/effect.hpp"

namespace wxfleet::econometrics {

struct DidOptions {
  std::string outcome = "revenue_per_min";
  std::vector<std::string> covariates = kWeatherCovariates;
  bool fixed_effects = true;  ///< driver and day; otherwise group and post enter as dummies
  CovarianceType covariance = CovarianceType::CR1;
  std::string cluster = "driver_id";
};

/// Coefficient on group x post. With fixed effects the main effects are
/// absorbed; without, y = a + b1 group + b2 post + b3 group x post (+ covariates).
EffectEstimate did_2x2(const Frame& frame, const std::string& group, const std::string& post,
                       const DidOptions& options);

/// Median of the per-driver implementation days.
double median_implementation_day(const Frame& rollout);

/// Early-versus-late sample: adds `early_adopter` (implement_day < median),
/// `post` (day >= median) and their product, and drops driver-days that are
/// treated outside the early x post cell (early adopters before the median,
/// late adopters from their own implementation day on). Throws
/// ValidationError when either adopter group is empty.
Frame did_sample(const Frame& rollout);

EffectEstimate did(const Frame& rollout, const DidOptions& options = {});

struct ParallelTrendsResult {
  int weeks = 0;          ///< pre-period weeks used
  int anchor_day = 0;     ///< first implementation day; week 1 ends the day before
  WaldTest with_driver_fe;  ///< driver + day FE, weeks - 1 interactions
  WaldTest day_fe_only;     ///< day FE, one interaction per week
  std::size_t n = 0;
};

/// Joint test that early-adopter x pre-week interactions are zero, on the
/// driver-days before anyone adopts. Weeks are 7-day bins counted back from
/// the first implementation day, at most `max_weeks`. Throws ValidationError
/// when fewer than 2 full weeks exist.
ParallelTrendsResult parallel_trends_test(const Frame& rollout, int max_weeks = 20,
                                          const std::string& outcome = "revenue_per_min");

}  // namespace wxfleet::econometrics
