#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "wxfleet/error.hpp"
#include "wxfleet/stats.hpp"

using namespace wxfleet;

TEST_CASE("pearson identities") {
  std::mt19937_64 g(1);
  std::normal_distribution<double> z;
  std::vector<double> x(50), up(50), down(50);
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = z(g);
    up[i] = 2.5 * x[i] + 4.0;
    down[i] = -0.3 * x[i] + 1.0;
  }
  CHECK(std::abs(stats::pearson(x, x).r - 1.0) < 1e-12);
  CHECK(std::abs(stats::pearson(x, up).r - 1.0) < 1e-12);
  CHECK(std::abs(stats::pearson(x, down).r + 1.0) < 1e-12);
}

TEST_CASE("pearson closed form") {
  const std::vector<double> x{1, 2, 3, 4}, y{2, 4, 6, 9};
  // sxy = 11.5, sxx = 5, syy = 26.75
  const double r = 11.5 / std::sqrt(5.0 * 26.75);
  const auto e = stats::pearson(x, y);
  CHECK(e.r == doctest::Approx(r).epsilon(1e-14));
  CHECK(e.n == 4u);
  const double t = r * std::sqrt(2.0 / (1.0 - r * r));
  CHECK(e.p_value > 0.0);
  CHECK(e.p_value < 0.05);
  CHECK(t > 4.0);
}

TEST_CASE("pearson errors") {
  const std::vector<double> a{1, 2, 3}, c{5, 5, 5}, s{1, 2};
  CHECK_THROWS_AS(stats::pearson(a, c), ValidationError);
  CHECK_THROWS_AS(stats::pearson(a, s), ValidationError);
  CHECK_THROWS_AS(stats::pearson(s, s), ValidationError);
}

TEST_CASE("welch closed form") {
  const std::vector<double> a{1, 2, 3}, b{4, 5, 6};
  const auto t = stats::welch_t(a, b);
  CHECK(t.t == doctest::Approx(-3.0 / std::sqrt(2.0 / 3.0)).epsilon(1e-14));
  CHECK(t.df == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(stats::welch_t(a, a).t == 0.0);

  std::mt19937_64 g(3);
  std::normal_distribution<double> z;
  std::vector<double> u(17), v(40);
  for (auto& e : u) e = z(g);
  for (auto& e : v) e = 3.0 * z(g) + 0.5;
  CHECK(stats::welch_t(u, v).t == doctest::Approx(oracle::welch_t(u, v)).epsilon(1e-12));
  CHECK(stats::welch_t(u, v).t == doctest::Approx(-stats::welch_t(v, u).t).epsilon(1e-15));
}

TEST_CASE("cohens d") {
  const std::vector<double> a{1, 2, 3};
  CHECK(stats::cohens_d(a, a) == 0.0);
  // means 0 and 1, both SD 1
  const std::vector<double> x{-1, 0, 1}, y{0, 1, 2};
  CHECK(stats::cohens_d(y, x) == doctest::Approx(1.0).epsilon(1e-14));
  const std::vector<double> flat{2, 2, 2};
  CHECK_THROWS_AS(stats::cohens_d(flat, flat), ValidationError);
}

TEST_CASE("stars") {
  CHECK(stats::significance_stars(0.0005) == "***");
  CHECK(stats::significance_stars(0.005) == "**");
  CHECK(stats::significance_stars(0.03) == "*");
  CHECK(stats::significance_stars(0.2) == "");
}
