#pragma once

#include <optional>
#include <string>
#include <vector>

namespace wxfleet::economics {

/// Per-driver costs in yen.
struct CostModel {
  double implementation_cost = 0.0;
  double annual_operating_cost = 0.0;
};

inline constexpr CostModel kWeatherAiCosts{150000.0, 30000.0};
inline constexpr CostModel kRouteOnlyCosts{75000.0, 15000.0};

/// daily_delta x working_days. Throws ValidationError on negative inputs.
double annual_benefit(double daily_delta, int working_days);

/// (annual_benefit - operating - implementation) / implementation x 100.
/// Throws ValidationError when the implementation cost is not positive.
double roi_pct(double annual_benefit, const CostModel& costs);

/// implementation / (monthly net benefit); nullopt ("never") when the net
/// benefit is not positive.
std::optional<double> payback_months(const CostModel& costs, double annual_benefit);

/// -implementation + sum over years 1..H of net benefit / (1 + rate)^y.
double npv(double annual_benefit, const CostModel& costs, double discount_rate, int horizon_years);

struct SensitivityRow {
  double benefit_change_pct = 0.0;
  double weather_roi = 0.0;
  double route_roi = 0.0;
  double ratio = 0.0;
  std::optional<double> reported_weather_roi;
  std::optional<double> reported_route_roi;
  std::optional<double> reported_ratio;
};

/// ROI of both cost models with annual benefits scaled by (1 + change/100).
std::vector<SensitivityRow> sensitivity(double weather_benefit, double route_benefit,
                                        const std::vector<double>& changes_pct,
                                        const CostModel& weather = kWeatherAiCosts,
                                        const CostModel& route = kRouteOnlyCosts);

/// Figures as published, for side-by-side comparison.
namespace reported {
inline constexpr double kDailyEarningsDelta = 37833.0;
inline constexpr double kTraditionalDailyEarnings = 15493.0;
inline constexpr double kAnnualBenefit = 13809103.0;
inline constexpr double kWeatherRoiPct = 9106.0;
inline constexpr double kRouteRoiPct = 1427.0;
inline constexpr double kWeatherPaybackMonths = 1.4;
inline constexpr double kRoutePaybackMonths = 2.9;
inline constexpr double kRouteUpliftPct = 14.0;
inline constexpr double kWeatherMarketUsd = 8.9e9;
inline constexpr double kRouteMarketUsd = 8.5e8;
}  // namespace reported

struct EconInputs {
  std::string source;  ///< "reported" or "simulated"
  double weather_annual_benefit = 0.0;
  double route_annual_benefit = 0.0;
  double discount_rate = 0.05;
  int horizon_years = 5;
  CostModel weather = kWeatherAiCosts;
  CostModel route = kRouteOnlyCosts;
};

/// Published inputs: the stated annual benefit for weather-aware AI, and
/// traditional daily earnings x 14% x working_days for route-only.
EconInputs reported_inputs(int working_days);

/// Simulated inputs: daily earnings delta and traditional daily earnings of a run.
EconInputs simulated_inputs(double weather_daily_delta, double traditional_daily_earnings, int working_days);

struct Comparison {
  std::string quantity;
  double computed = 0.0;
  double reported = 0.0;
  double delta() const { return computed - reported; }
};

struct EconReport {
  EconInputs inputs;
  double weather_roi = 0.0;
  double route_roi = 0.0;
  std::optional<double> weather_payback_months;
  std::optional<double> route_payback_months;
  double weather_npv = 0.0;
  double route_npv = 0.0;
  std::vector<std::pair<double, double>> weather_npv_by_rate;  ///< (rate, npv) for 1%..20%
  std::vector<SensitivityRow> sensitivity;                     ///< -20, 0, +20
  std::vector<Comparison> comparisons;
};

EconReport build_report(const EconInputs& inputs, int working_days);

}  // namespace wxfleet::economics
