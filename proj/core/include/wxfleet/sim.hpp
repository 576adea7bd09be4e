#pragma once

#include <array>
#include <vector>

#include "wxfleet/config.hpp"
#include "wxfleet/fleet.hpp"
#include "wxfleet/market.hpp"
#include "wxfleet/panel.hpp"
#include "wxfleet/weather.hpp"

namespace wxfleet {

/// Random inputs of one driver-hour. Drawn in full whatever the mode, so
/// switching a mode never shifts later draws.
struct HourDraws {
  double z_revenue = 0.0;
  double u_efficiency = 0.5;
  double u_delay = 0.5;
  double z_wait = 0.0;
  double z_utilization = 0.0;

  static HourDraws draw(Rng& rng);
};

/// Yen-per-minute decomposition of one driver-hour.
struct HourOutcome {
  double revenue_per_min = 0.0;
  double wait_min = 0.0;
  double utilization = 0.0;
  double traditional_revenue = 0.0;  ///< weather/market part shared by all modes
  ComponentGains contribution_yen;    ///< AI or route-only additions, yen/min
  double prepositioning_yen = 0.0;    ///< included in contribution_yen.positioning
  double utilization_gain = 0.0;      ///< from pre-positioning
  double response_delay_min = 0.0;
};

/// Weather, forecasts and market multipliers of one experiment, precomputed
/// per hour of the series.
class MarketModel {
 public:
  MarketModel(const SimConfig& config, WeatherSeries series, std::vector<Forecast> forecasts);

  const SimConfig& config() const noexcept { return config_; }
  const WeatherSeries& series() const noexcept { return series_; }
  std::size_t hours() const noexcept { return series_.hours(); }
  const EventFlags& flags(std::size_t hour) const { return flags_.at(hour); }
  const Forecast& forecast(std::size_t hour) const { return forecasts_.at(hour); }
  /// time factor x fare x demand x rain-intensity demand x traffic speed.
  double market_factor(std::size_t hour) const { return market_.at(hour); }
  double mean_market_factor() const noexcept { return mean_market_; }
  /// Long-run traditional revenue rate of a driver with this skill multiplier.
  double expected_rate(double skill_multiplier) const;

 private:
  SimConfig config_;
  WeatherSeries series_;
  std::vector<Forecast> forecasts_;
  std::vector<EventFlags> flags_;
  std::vector<double> market_;
  double mean_market_ = 1.0;
};

/// The hourly kernel shared by every experiment. `ramp` scales the
/// weather-aware gains (learning curve); ignored for other modes.
HourOutcome simulate_hour(const MarketModel& market, std::size_t hour, SkillLevel skill,
                          OperationalMode mode, double ramp, const HourDraws& draws);

/// 30-day trip-level comparison: n_traditional_trips traditional records,
/// then n_ai_trips weather-aware records, each at a uniformly drawn hour and
/// driver.
PanelDataset run_cross_sectional(const SimConfig& config);

/// Balanced driver x day panel of 10-hour shifts with staggered adoption.
PanelDataset run_staggered_rollout(const SimConfig& config);

/// The weather series and fleet behind each experiment, for export.
WeatherSeries cross_sectional_weather(const SimConfig& config);
std::vector<DriverProfile> rollout_fleet(const SimConfig& config);

struct ModeSummary {
  std::size_t n = 0;
  double revenue_per_min = 0.0;
  double wait_min = 0.0;
  double utilization = 0.0;
  double daily_earnings = 0.0;
};

struct SummaryTable {
  ModeSummary traditional;
  ModeSummary weather_ai;
  /// (ai - traditional) / traditional * 100 for each metric.
  double revenue_improvement_pct = 0.0;
  double wait_improvement_pct = 0.0;
  double utilization_improvement_pct = 0.0;
  double earnings_improvement_pct = 0.0;
};

/// Per-mode means and improvements. Throws ValidationError for rollout
/// panels or when either mode is missing.
SummaryTable summarize(const PanelDataset& panel);

/// Long-run common-random-number comparison of the three modes at full
/// effect, used for the component and skill tables.
struct DecompositionResult {
  std::size_t records_per_skill = 0;
  /// mean revenue_per_min [skill][mode]
  std::array<std::array<double, 3>, 3> revenue{};
  /// Realized weather-aware components in percent of mean traditional revenue.
  ComponentGains realized_components;
  double prepositioning_pct = 0.0;  ///< part of realized_components.positioning
  double headline_pct = 0.0;        ///< (mean AI / mean traditional - 1) * 100
  double forecast_hit_rate = 0.0;
  double prepositioning_share = 0.0;  ///< AI records with negative response delay

  /// Mode gain over traditional for one skill, percent.
  double skill_gain(SkillLevel skill, OperationalMode mode) const;
  /// Relative productivity gap high vs low, (high / low - 1) * 100, under a mode.
  double skill_gap(OperationalMode mode) const;
  /// 1 - gap(mode) / gap(traditional), percent.
  double gap_reduction(OperationalMode mode) const;
};

DecompositionResult run_decomposition(const SimConfig& config, int days = 365,
                                      std::size_t records_per_skill = 20000);

}  // namespace wxfleet
