#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "synthetic.hpp"
#include "wxfleet/econometrics/psm.hpp"
#include "wxfleet/error.hpp"

using namespace wxfleet;
using namespace wxfleet::econometrics;

TEST_CASE("matcher equals exhaustive enumeration on small instances") {
  std::mt19937_64 g(17);
  std::uniform_real_distribution<double> u(0.05, 0.95);
  std::normal_distribution<double> z;
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 4 + static_cast<std::size_t>(rep % 17);
    std::vector<double> score(n), treated(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      // coarse scores force ties
      score[i] = std::round(u(g) * 20.0) / 20.0;
      treated[i] = i % 2 == 0 || i % 5 == 0;
      y[i] = z(g) + 3.0 * treated[i];
    }
    const auto m = nearest_neighbor_att(score, treated, y, 0.0, 1.0);
    const auto o = oracle::brute_force_att(score, treated, y);
    CHECK(m.att == doctest::Approx(o.att).epsilon(1e-12));
    CHECK(m.matches == o.controls);
    CHECK(m.n_dropped == 0u);
  }
}

TEST_CASE("identical scores and outcomes give zero") {
  const std::vector<double> score{0.4, 0.4, 0.4, 0.4}, treated{1, 0, 1, 0}, y{2, 2, 2, 2};
  CHECK(nearest_neighbor_att(score, treated, y, 0, 1).att == 0.0);
}

TEST_CASE("common support drops treated outside the band") {
  const std::vector<double> score{0.1, 0.5, 0.9, 0.45, 0.55}, treated{1, 1, 1, 0, 0}, y{1, 2, 3, 0, 0};
  const auto m = nearest_neighbor_att(score, treated, y, 0.4, 0.6);
  CHECK(m.n_dropped == 2u);
  CHECK(m.n_treated == 1u);
  CHECK(m.att == 2.0);
  CHECK_THROWS_AS(nearest_neighbor_att(score, treated, y, 0.7, 0.8), EstimationError);
}

TEST_CASE("logit matches a gradient-ascent oracle") {
  std::mt19937_64 g(23);
  const Eigen::MatrixXd Z = oracle::random_matrix(300, 2, g);
  const Eigen::MatrixXd X = oracle::with_intercept(Z);
  const Eigen::Vector3d beta(0.3, 1.0, -0.7);
  std::uniform_real_distribution<double> u(0, 1);
  Eigen::VectorXd d(300);
  for (int i = 0; i < 300; ++i) d(i) = u(g) < 1.0 / (1.0 + std::exp(-(X.row(i) * beta)(0))) ? 1.0 : 0.0;
  const auto m = fit_logit(d, Z, {"a", "b"});
  CHECK(m.converged);
  CHECK(m.names.front() == "(intercept)");
  const Eigen::VectorXd ref = oracle::logit_gradient_ascent(X, d, 2.0, 60000);
  CHECK((m.coef - ref).cwiseAbs().maxCoeff() < 1e-4);
  for (double s : m.scores) {
    CHECK(s > 0.0);
    CHECK(s < 1.0);
  }
}

TEST_CASE("uninformative covariate leaves the share") {
  Eigen::VectorXd d(40);
  Eigen::MatrixXd Z(40, 1);
  for (int i = 0; i < 40; ++i) {
    d(i) = i % 4 == 0;
    Z(i, 0) = (i / 4) % 2;  // same distribution in both classes
  }
  const auto m = fit_logit(d, Z, {"z"});
  CHECK(std::abs(m.coef(1)) < 1e-8);
  for (double s : m.scores) CHECK(s == doctest::Approx(0.25).epsilon(1e-8));
}

TEST_CASE("perfect separation is reported") {
  Eigen::VectorXd d(10);
  Eigen::MatrixXd Z(10, 1);
  for (int i = 0; i < 10; ++i) {
    Z(i, 0) = i;
    d(i) = i >= 5;
  }
  CHECK_THROWS_AS(fit_logit(d, Z, {"z"}), EstimationError);
}

TEST_CASE("propensity on a panel frame") {
  synthetic::PanelSpec s;
  const auto f = synthetic::staggered_panel(s);
  const auto model = fit_propensity(f);
  CHECK(model.converged);
  CHECK(model.names.size() == kPropensityCovariates.size() + 1);
  CHECK(model.support_low <= model.support_high);
  const auto e = match_att(f, model);
  CHECK(e.effect > 0.0);
  CHECK(e.se > 0.0);
  CHECK(std::isfinite(e.pct_impact));
}
