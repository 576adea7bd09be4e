#include "wxfleet/economics.hpp"

#include <cmath>

#include "wxfleet/error.hpp"

namespace wxfleet::economics {

double annual_benefit(double daily_delta, int working_days) {
  if (daily_delta < 0.0) throw ValidationError("daily_delta", "must be >= 0");
  if (working_days < 0) throw ValidationError("working_days", "must be >= 0");
  return daily_delta * working_days;
}

double roi_pct(double annual_benefit, const CostModel& c) {
  if (!(c.implementation_cost > 0.0)) throw ValidationError("implementation_cost", "must be > 0 for ROI");
  const double net = annual_benefit - c.annual_operating_cost;
  return (net - c.implementation_cost) / c.implementation_cost * 100.0;
}

std::optional<double> payback_months(const CostModel& c, double annual_benefit) {
  const double monthly = (annual_benefit - c.annual_operating_cost) / 12.0;
  if (!(monthly > 0.0)) return std::nullopt;
  return c.implementation_cost / monthly;
}

double npv(double annual_benefit, const CostModel& c, double rate, int horizon) {
  if (rate < 0.0) throw ValidationError("discount_rate", "must be >= 0");
  if (horizon < 0) throw ValidationError("horizon_years", "must be >= 0");
  const double net = annual_benefit - c.annual_operating_cost;
  double v = -c.implementation_cost;
  for (int y = 1; y <= horizon; ++y) v += net / std::pow(1.0 + rate, y);
  return v;
}

std::vector<SensitivityRow> sensitivity(double weather_benefit, double route_benefit,
                                        const std::vector<double>& changes, const CostModel& weather,
                                        const CostModel& route) {
  std::vector<SensitivityRow> out;
  for (double pct : changes) {
    SensitivityRow r;
    r.benefit_change_pct = pct;
    const double s = 1.0 + pct / 100.0;
    r.weather_roi = roi_pct(s * weather_benefit, weather);
    r.route_roi = roi_pct(s * route_benefit, route);
    r.ratio = r.route_roi != 0.0 ? r.weather_roi / r.route_roi : std::nan("");
    if (pct == -20.0) {
      r.reported_weather_roi = 7285.0;
      r.reported_route_roi = 1142.0;
    } else if (pct == 0.0) {
      r.reported_weather_roi = reported::kWeatherRoiPct;
      r.reported_route_roi = reported::kRouteRoiPct;
    } else if (pct == 20.0) {
      r.reported_weather_roi = 10927.0;
      r.reported_route_roi = 1712.0;
    }
    if (r.reported_weather_roi) r.reported_ratio = 6.4;
    out.push_back(r);
  }
  return out;
}

EconInputs reported_inputs(int working_days) {
  EconInputs in;
  in.source = "reported";
  in.weather_annual_benefit = reported::kAnnualBenefit;
  in.route_annual_benefit =
      annual_benefit(reported::kTraditionalDailyEarnings * reported::kRouteUpliftPct / 100.0, working_days);
  return in;
}

EconInputs simulated_inputs(double weather_daily_delta, double traditional_daily_earnings, int working_days) {
  EconInputs in;
  in.source = "simulated";
  in.weather_annual_benefit = annual_benefit(weather_daily_delta, working_days);
  in.route_annual_benefit = annual_benefit(traditional_daily_earnings * reported::kRouteUpliftPct / 100.0, working_days);
  return in;
}

EconReport build_report(const EconInputs& in, int working_days) {
  EconReport r;
  r.inputs = in;
  r.weather_roi = roi_pct(in.weather_annual_benefit, in.weather);
  r.route_roi = roi_pct(in.route_annual_benefit, in.route);
  r.weather_payback_months = payback_months(in.weather, in.weather_annual_benefit);
  r.route_payback_months = payback_months(in.route, in.route_annual_benefit);
  r.weather_npv = npv(in.weather_annual_benefit, in.weather, in.discount_rate, in.horizon_years);
  r.route_npv = npv(in.route_annual_benefit, in.route, in.discount_rate, in.horizon_years);
  for (int pct = 1; pct <= 20; ++pct) {
    const double rate = pct / 100.0;
    r.weather_npv_by_rate.emplace_back(rate, npv(in.weather_annual_benefit, in.weather, rate, in.horizon_years));
  }
  r.sensitivity = sensitivity(in.weather_annual_benefit, in.route_annual_benefit, {-20.0, 0.0, 20.0}, in.weather, in.route);

  const double nan = std::nan("");
  r.comparisons = {
      {"annual_benefit_from_daily_delta", annual_benefit(reported::kDailyEarningsDelta, working_days),
       reported::kAnnualBenefit},
      {"weather_ai_roi_pct", r.weather_roi, reported::kWeatherRoiPct},
      {"route_only_roi_pct", r.route_roi, reported::kRouteRoiPct},
      {"weather_ai_payback_months", r.weather_payback_months.value_or(nan), reported::kWeatherPaybackMonths},
      {"route_only_payback_months", r.route_payback_months.value_or(nan), reported::kRoutePaybackMonths},
      {"roi_ratio", r.weather_roi / r.route_roi, reported::kWeatherRoiPct / reported::kRouteRoiPct},
  };
  return r;
}

}  // namespace wxfleet::economics
