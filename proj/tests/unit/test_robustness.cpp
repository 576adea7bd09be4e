#include <doctest.h>

#include <cmath>

#include "synthetic.hpp"
#include "wxfleet/econometrics/robustness.hpp"
#include "wxfleet/error.hpp"

using namespace wxfleet;
using namespace wxfleet::econometrics;

TEST_CASE("placebo suite under a true effect") {
  synthetic::PanelSpec s;
  s.days = 90;
  s.first_adoption = 40;
  s.last_adoption = 60;
  s.effect = 6.0;
  const auto f = synthetic::staggered_panel(s);
  Rng a(42, "placebo"), b(42, "placebo");
  const auto r = placebo_suite(f, 30, a);
  CHECK(r.fake_date_draws == 30);
  CHECK(r.fake_date_significant_share <= 0.2);
  CHECK(r.actual.p_value < 0.001);
  CHECK(std::abs(r.permuted_mean_effect) < 6.0);

  // same stream, same draws
  const auto again = placebo_suite(f, 30, b);
  REQUIRE(again.draws.size() == r.draws.size());
  for (std::size_t i = 0; i < r.draws.size(); ++i) CHECK(again.draws[i].effect == r.draws[i].effect);
}

TEST_CASE("placebo needs enough draws") {
  Rng r(1, "placebo");
  CHECK_THROWS_AS(placebo_suite(synthetic::staggered_panel({}), 10, r), ValidationError);
}

TEST_CASE("heterogeneity rows") {
  synthetic::PanelSpec s;
  s.drivers = 90;
  s.effect = 5.0;
  const auto f = synthetic::staggered_panel(s);
  const auto skill = heterogeneity(f, HeterogeneityDimension::Skill);
  REQUIRE(skill.size() == 3u);
  for (const auto& row : skill) {
    REQUIRE(row.estimate.has_value());
    CHECK(row.estimate->effect > 0.0);
  }
  const auto weather = heterogeneity(f, HeterogeneityDimension::Weather);
  REQUIRE(weather.size() == 2u);
  // clear days carry no heavy-rain share; the row still estimates
  CHECK(weather[1].subgroup == "clear");
  CHECK(weather[1].estimate.has_value());
  CHECK(heterogeneity(f, HeterogeneityDimension::DayType).size() == 2u);
}

TEST_CASE("a subgroup covering the sample equals the pooled estimate") {
  synthetic::PanelSpec s;
  auto f = synthetic::staggered_panel(s);
  f.set("skill", std::vector<double>(f.rows(), 1.0));
  const auto rows = heterogeneity(f, HeterogeneityDimension::Skill);
  const auto pooled = did(f);
  for (const auto& row : rows) {
    if (row.subgroup != "medium") {
      CHECK_FALSE(row.estimate.has_value());
      CHECK_FALSE(row.reason.empty());
      continue;
    }
    REQUIRE(row.estimate.has_value());
    CHECK(row.estimate->effect == doctest::Approx(pooled.effect).epsilon(1e-12));
    CHECK(row.estimate->se == doctest::Approx(pooled.se).epsilon(1e-12));
  }
}
