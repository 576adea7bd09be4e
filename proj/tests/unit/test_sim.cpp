#include <doctest.h>

#include <set>
#include <sstream>

#include "wxfleet/error.hpp"
#include "wxfleet/sim.hpp"

using namespace wxfleet;

namespace {
const PanelDataset& cross() {
  static const PanelDataset p = run_cross_sectional(SimConfig{});
  return p;
}
const PanelDataset& rollout() {
  static const PanelDataset p = run_staggered_rollout(SimConfig{});
  return p;
}

PanelRecord rec(OperationalMode m, double rev, double wait, double util) {
  PanelRecord r;
  r.mode = m;
  r.revenue_per_min = rev;
  r.wait_min = wait;
  r.utilization = util;
  r.daily_earnings = rev * 600 * util;
  return r;
}
}  // namespace

TEST_CASE("cross-sectional shape and record invariants") {
  const auto& p = cross();
  REQUIRE(p.records.size() == 10000u);
  CHECK(p.experiment == Experiment::CrossSectional);
  std::size_t ai = 0;
  for (const auto& r : p.records) {
    REQUIRE(r.revenue_per_min >= 0.0);
    REQUIRE(r.utilization >= 0.0);
    REQUIRE(r.utilization <= 1.0);
    REQUIRE(r.wait_min >= 0.0);
    REQUIRE(r.daily_earnings == r.revenue_per_min * 600.0 * r.utilization);
    REQUIRE(r.day >= 1);
    REQUIRE(r.day <= 30);
    ai += r.mode == OperationalMode::WeatherAwareAI;
  }
  CHECK(ai == 5000u);
}

TEST_CASE("cross-sectional covers every hour and weekday") {
  std::set<int> hours, weekdays;
  for (const auto& r : cross().records) {
    hours.insert(r.period);
    weekdays.insert((r.day - 1) % 7);
  }
  CHECK(hours.size() == 24u);
  CHECK(weekdays.size() == 7u);
}

TEST_CASE("rollout is balanced and follows the schedule") {
  const auto& p = rollout();
  SimConfig c;
  REQUIRE(p.records.size() == static_cast<std::size_t>(c.drivers * c.days_rollout));
  std::set<std::pair<int, int>> cells;
  for (const auto& r : p.records) {
    cells.insert({r.driver_id, r.day});
    REQUIRE(r.treated == (r.day >= r.implement_day));
    REQUIRE(r.relative_day == r.day - r.implement_day);
    if (r.day < 45) REQUIRE_FALSE(r.treated);
    if (r.day >= 75) REQUIRE(r.treated);
    REQUIRE(r.daily_earnings == r.revenue_per_min * 600.0 * r.utilization);
    REQUIRE(r.utilization <= 1.0);
    REQUIRE(r.heavy_rain == (r.heavy_rain_share > 0.0));
  }
  CHECK(cells.size() == p.records.size());
}

TEST_CASE("same seed gives the same datasets") {
  CHECK(run_cross_sectional(SimConfig{}).records == cross().records);
  SimConfig other;
  other.seed = 7;
  CHECK(run_cross_sectional(other).records != cross().records);
}

TEST_CASE("rollout parameters leave the cross-sectional data untouched") {
  SimConfig c;
  c.days_rollout = 150;
  c.rollout_start_day = 50;
  c.rollout_end_day = 90;
  CHECK(run_cross_sectional(c).records == cross().records);
}

TEST_CASE("weather-aware never earns less on the same draws") {
  SimConfig c;
  Rng wr = spawn_stream(c, "weather");
  auto series = generate_weather_series(c, 10, wr);
  Rng fr = spawn_stream(c, "forecast");
  auto fc = forecast_series(series, c, fr);
  MarketModel m(c, series, fc);
  Rng dr(c.seed, "test");
  for (std::size_t h = 0; h < m.hours(); ++h) {
    const auto d = HourDraws::draw(dr);
    for (auto s : kAllSkills) {
      const auto trad = simulate_hour(m, h, s, OperationalMode::Traditional, 1.0, d);
      const auto ai = simulate_hour(m, h, s, OperationalMode::WeatherAwareAI, 1.0, d);
      const auto route = simulate_hour(m, h, s, OperationalMode::RouteOnlyAI, 1.0, d);
      REQUIRE(ai.revenue_per_min >= trad.revenue_per_min);
      REQUIRE(route.revenue_per_min >= trad.revenue_per_min);
      REQUIRE(ai.traditional_revenue == trad.traditional_revenue);
    }
  }
}

TEST_CASE("null effect switches every AI gain off") {
  SimConfig c;
  c.ai_effect_scale = 0.0;
  Rng wr = spawn_stream(c, "weather");
  auto series = generate_weather_series(c, 5, wr);
  Rng fr = spawn_stream(c, "forecast");
  MarketModel m(c, series, forecast_series(series, c, fr));
  Rng dr(c.seed, "test");
  for (std::size_t h = 0; h < m.hours(); ++h) {
    const auto d = HourDraws::draw(dr);
    const auto ai = simulate_hour(m, h, SkillLevel::Medium, OperationalMode::WeatherAwareAI, 1.0, d);
    CHECK(ai.contribution_yen.total() == 0.0);
    CHECK(ai.revenue_per_min == ai.traditional_revenue);
  }
}

TEST_CASE("summarize arithmetic") {
  PanelDataset p;
  p.records = {rec(OperationalMode::Traditional, 50.1, 9.1, 0.481),
               rec(OperationalMode::WeatherAwareAI, 103.9, 5.1, 0.784)};
  const auto t = summarize(p);
  CHECK(t.revenue_improvement_pct == doctest::Approx(107.385).epsilon(1e-4));
  CHECK(t.wait_improvement_pct == doctest::Approx(-43.956).epsilon(1e-4));

  PanelDataset only_trad;
  only_trad.records = {rec(OperationalMode::Traditional, 1, 1, 0.5)};
  CHECK_THROWS_AS(summarize(only_trad), ValidationError);
  CHECK_THROWS_AS(summarize(rollout()), ValidationError);
}

TEST_CASE("decomposition identity") {
  const auto d = run_decomposition(SimConfig{}, 60, 2000);
  const auto& g = d.realized_components;
  CHECK(g.total() == doctest::Approx(g.weather_prediction + g.positioning + g.route + g.dynamic_pricing +
                                     g.integration));
  CHECK(d.prepositioning_pct <= g.positioning);
  CHECK(d.skill_gain(SkillLevel::Low, OperationalMode::Traditional) == doctest::Approx(0.0));
}
