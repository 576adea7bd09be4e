#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "wxfleet/econometrics/frame.hpp"

namespace wxfleet::econometrics {

enum class CovarianceType { Classical, HC1, CR1 };

/// Matrix-level regression problem.
struct RegressionInput {
  Eigen::VectorXd y;
  Eigen::MatrixXd X;  ///< regressors, without intercept
  std::vector<std::string> names;
  /// Each entry assigns a group id to every row; groups are absorbed by
  /// alternating projections (an intercept is then implied).
  std::vector<std::vector<int>> fixed_effects;
  std::vector<int> clusters;  ///< required for CR1
  bool add_intercept = true;  ///< ignored when fixed effects are present
  CovarianceType covariance = CovarianceType::CR1;
};

struct WaldTest {
  double f = 0.0;
  double df1 = 0.0;
  double df2 = 0.0;
  double p_value = 1.0;
};

struct RegressionResult {
  std::vector<std::string> names;
  Eigen::VectorXd coef;
  Eigen::VectorXd se;
  Eigen::VectorXd t;
  Eigen::VectorXd p;
  Eigen::MatrixXd vcov;
  Eigen::VectorXd residuals;
  std::size_t n = 0;
  int k = 0;            ///< estimated coefficients
  int absorbed_df = 0;  ///< degrees of freedom used by fixed effects
  int n_clusters = 0;
  double df_resid = 0.0;      ///< n - k - absorbed_df
  double inference_df = 0.0;  ///< G - 1 when clustered, df_resid otherwise
  double r_squared = 0.0;     ///< within R^2 when fixed effects are absorbed
  CovarianceType covariance = CovarianceType::CR1;

  /// Throws ValidationError for unknown names.
  std::size_t index(const std::string& name) const;
  double coef_of(const std::string& name) const { return coef(static_cast<Eigen::Index>(index(name))); }
  double se_of(const std::string& name) const { return se(static_cast<Eigen::Index>(index(name))); }
  double t_of(const std::string& name) const { return t(static_cast<Eigen::Index>(index(name))); }
  double p_of(const std::string& name) const { return p(static_cast<Eigen::Index>(index(name))); }

  /// Joint test that the named coefficients are all zero, F on
  /// (q, inference_df) degrees of freedom.
  WaldTest wald(const std::vector<std::string>& names) const;
};

/// Least squares with optional absorbed fixed effects. Throws
/// EstimationError naming the collinear columns on rank deficiency, and when
/// fewer than 2 clusters are available for CR1.
RegressionResult ols(const RegressionInput& input);

/// Covariance, standard errors, t and p of `r` from the score regressors X
/// (second-stage fitted values for 2SLS) and bread = (X'X)^-1. Needs coef,
/// residuals, absorbed_df, df_resid and covariance already set.
void fill_inference(RegressionResult& r, const Eigen::MatrixXd& X, const Eigen::MatrixXd& bread,
                    const std::vector<int>& clusters);

/// Within transformation: removes every fixed effect from each column.
Eigen::MatrixXd absorb(const Eigen::MatrixXd& M, const std::vector<std::vector<int>>& fixed_effects);

/// Degrees of freedom consumed by the fixed effects (levels minus the
/// redundancies implied by connected components for two-way designs).
int absorbed_degrees_of_freedom(const std::vector<std::vector<int>>& fixed_effects);

/// Name-level description of a regression over a Frame.
struct RegressionSpec {
  std::string outcome;
  std::vector<std::string> regressors;
  std::vector<std::string> covariates;
  bool driver_fe = false;  ///< absorbs `driver_id`
  bool time_fe = false;    ///< absorbs `day`
  std::string cluster;     ///< column name; empty means no clustering
  CovarianceType covariance = CovarianceType::CR1;
};

RegressionResult ols(const Frame& frame, const RegressionSpec& spec);

}  // namespace wxfleet::econometrics
