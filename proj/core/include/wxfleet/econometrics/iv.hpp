#pragma once

#include <string>
#include <vector>

#include "wxfleet/econometrics/effect.hpp"

namespace wxfleet::econometrics {

struct IvInput {
  Eigen::VectorXd y;
  Eigen::MatrixXd endogenous;
  Eigen::MatrixXd instruments;
  Eigen::MatrixXd exogenous;  ///< may have zero columns
  std::vector<std::string> endogenous_names;
  std::vector<std::string> instrument_names;
  std::vector<std::string> exogenous_names;
  std::vector<std::vector<int>> fixed_effects;
  std::vector<int> clusters;
  bool add_intercept = true;  ///< ignored with fixed effects
  CovarianceType covariance = CovarianceType::CR1;
};

struct IvResult {
  RegressionResult second_stage;  ///< coefficients of endogenous then exogenous
  std::vector<RegressionResult> first_stages;  ///< one per endogenous regressor
  std::vector<WaldTest> first_stage_f;         ///< instruments jointly, same covariance
  std::vector<WaldTest> first_stage_f_classical;
};

/// Two-stage least squares. Residuals use the observed endogenous values.
/// Throws ValidationError when under-identified.
IvResult two_stage_least_squares(const IvInput& input);

struct IvEstimate {
  EffectEstimate effect;
  WaldTest first_stage;
  WaldTest first_stage_classical;
  bool weak = false;  ///< first-stage F < 10
};

/// Revenue on utilization (percentage points) instrumented by
/// heavy_rain x treated, controlling for both main effects and the weather
/// covariates, driver and day fixed effects, clustered by driver.
IvEstimate iv_2sls(const Frame& rollout, const std::string& outcome = "revenue_per_min");

}  // namespace wxfleet::econometrics
