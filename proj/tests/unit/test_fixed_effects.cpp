#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "wxfleet/econometrics/regression.hpp"
#include "wxfleet/error.hpp"

using namespace wxfleet::econometrics;

namespace {
struct Design {
  Eigen::VectorXd y;
  Eigen::MatrixXd X;
  std::vector<int> a, b;
};

// Unbalanced two-way layout: every row gets a random (unit, period).
Design unbalanced(int rows, int units, int periods, std::uint64_t seed) {
  std::mt19937_64 g(seed);
  std::uniform_int_distribution<int> ua(0, units - 1), ub(0, periods - 1);
  Design d;
  d.X = oracle::random_matrix(rows, 2, g);
  d.y.resize(rows);
  std::vector<double> ea(static_cast<std::size_t>(units)), eb(static_cast<std::size_t>(periods));
  std::normal_distribution<double> z;
  for (auto& v : ea) v = 5 * z(g);
  for (auto& v : eb) v = 2 * z(g);
  for (int i = 0; i < rows; ++i) {
    // each unit and period appears at least once
    const int a = i < units ? i : ua(g);
    const int b = i < periods ? i : ub(g);
    d.a.push_back(a * 10 + 3);
    d.b.push_back(b + 1000);
    d.y(i) = 1.5 * d.X(i, 0) - 0.7 * d.X(i, 1) + ea[static_cast<std::size_t>(a)] +
             eb[static_cast<std::size_t>(b)] + z(g);
  }
  return d;
}
}  // namespace

TEST_CASE("absorbed fixed effects equal the dummy regression") {
  for (std::uint64_t seed : {1u, 2u, 3u, 4u}) {
    const auto d = unbalanced(200, 15, 12, seed);
    RegressionInput in;
    in.y = d.y;
    in.X = d.X;
    in.names = {"x0", "x1"};
    in.fixed_effects = {d.a, d.b};
    in.clusters = d.a;
    const auto r = ols(in);

    const Eigen::MatrixXd D = oracle::dummy_design(d.X, {d.a, d.b});
    const Eigen::VectorXd b = oracle::normal_equations(D, d.y);
    CHECK(std::abs(r.coef(0) - b(1)) <= 1e-8 * std::max(1.0, std::abs(b(1))));
    CHECK(std::abs(r.coef(1) - b(2)) <= 1e-8 * std::max(1.0, std::abs(b(2))));

    // clustered errors agree too, with the dummies counted in k
    const Eigen::VectorXd e = d.y - D * b;
    const double n = 200, k = static_cast<double>(D.cols()), G = 15;
    const Eigen::MatrixXd v = oracle::sandwich(D, e, d.a) * (G / (G - 1) * (n - 1) / (n - k));
    CHECK(r.se(0) == doctest::Approx(std::sqrt(v(1, 1))).epsilon(1e-8));
    CHECK(r.se(1) == doctest::Approx(std::sqrt(v(2, 2))).epsilon(1e-8));
    CHECK(r.absorbed_df == static_cast<int>(D.cols()) - 2);
  }
}

TEST_CASE("one-way absorption is exact demeaning") {
  const auto d = unbalanced(120, 10, 1, 9);
  RegressionInput in;
  in.y = d.y;
  in.X = d.X;
  in.names = {"x0", "x1"};
  in.fixed_effects = {d.a};
  in.covariance = CovarianceType::Classical;
  const auto r = ols(in);
  const Eigen::VectorXd b = oracle::normal_equations(oracle::dummy_design(d.X, {d.a}), d.y);
  CHECK(r.coef(0) == doctest::Approx(b(1)).epsilon(1e-10));
  CHECK(r.absorbed_df == 10);
  CHECK(r.df_resid == 120 - 2 - 10);
}

TEST_CASE("degrees of freedom follow connected components") {
  // two disconnected blocks: units {0,1} with periods {0,1}, units {2,3} with {2,3}
  const std::vector<int> a{0, 0, 1, 1, 2, 2, 3, 3}, b{0, 1, 0, 1, 2, 3, 2, 3};
  CHECK(absorbed_degrees_of_freedom({a, b}) == 4 + 4 - 2);
  CHECK(absorbed_degrees_of_freedom({a}) == 4);
  CHECK(absorbed_degrees_of_freedom({}) == 0);
}

TEST_CASE("a regressor constant within units is absorbed") {
  const auto d = unbalanced(100, 8, 6, 5);
  Eigen::MatrixXd X(100, 1);
  for (int i = 0; i < 100; ++i) X(i, 0) = d.a[static_cast<std::size_t>(i)] % 7;
  RegressionInput in;
  in.y = d.y;
  in.X = X;
  in.names = {"unit_level"};
  in.fixed_effects = {d.a};
  in.covariance = CovarianceType::Classical;
  CHECK_THROWS_AS(ols(in), wxfleet::EstimationError);
}
