#pragma once

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "wxfleet/econometrics/effect.hpp"

namespace wxfleet::econometrics {

struct PropensityModel {
  std::vector<std::string> names;  ///< "(intercept)" first
  Eigen::VectorXd coef;
  std::vector<double> scores;
  double support_low = 0.0;  ///< common support [low, high]
  double support_high = 1.0;
  bool converged = false;
  int iterations = 0;
};

/// Logistic regression by iteratively reweighted least squares. Converged
/// when the largest coefficient change is below 1e-8; gives up after
/// `max_iter`. Throws EstimationError on perfect separation or non-convergence.
PropensityModel fit_logit(const Eigen::VectorXd& d, const Eigen::MatrixXd& X, const std::vector<std::string>& names,
                          int max_iter = 100);

inline const std::vector<std::string> kPropensityCovariates{
    "skill_medium", "skill_high", "experience_years", "rain_mm", "heavy_rain_share",
    "extreme_temp_share", "low_visibility_share", "high_wind_share", "weekend"};

/// Propensity of `treatment` given kPropensityCovariates. Skill dummies are
/// derived from `skill` when absent.
PropensityModel fit_propensity(const Frame& frame, const std::string& treatment = "treated");

struct MatchResult {
  double att = 0.0;
  double se = 0.0;
  std::size_t n_treated = 0;   ///< matched treated units
  std::size_t n_dropped = 0;   ///< treated outside common support
  std::size_t n_controls_used = 0;
  std::vector<std::size_t> matches;  ///< control row per matched treated row, in treated order
};

/// One nearest neighbour on the score, with replacement, ties to the lowest
/// row index. Units outside [support_low, support_high] are discarded. SE
/// from the matched-pair variance with control variances estimated by
/// control-to-control matching.
MatchResult nearest_neighbor_att(std::span<const double> score, std::span<const double> treated,
                                 std::span<const double> outcome, double support_low, double support_high);

EffectEstimate match_att(const Frame& frame, const PropensityModel& model, const std::string& outcome = "revenue_per_min",
                         const std::string& treatment = "treated");

}  // namespace wxfleet::econometrics
