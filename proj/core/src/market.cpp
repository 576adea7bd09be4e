#include "wxfleet/market.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <string>

#include "wxfleet/error.hpp"
#include "wxfleet/report/csv.hpp"

namespace wxfleet {

std::string_view to_string(OperationalMode mode) {
  switch (mode) {
    case OperationalMode::Traditional: return "traditional";
    case OperationalMode::RouteOnlyAI: return "route_only_ai";
    case OperationalMode::WeatherAwareAI: return "weather_aware_ai";
  }
  return "?";
}

std::string_view to_string(SkillLevel skill) {
  switch (skill) {
    case SkillLevel::Low: return "low";
    case SkillLevel::Medium: return "medium";
    case SkillLevel::High: return "high";
  }
  return "?";
}

OperationalMode parse_mode(std::string_view text) {
  for (auto m : kAllModes)
    if (to_string(m) == text) return m;
  throw SchemaError("unknown mode '" + std::string(text) + "'");
}

SkillLevel parse_skill(std::string_view text) {
  for (auto s : kAllSkills)
    if (to_string(s) == text) return s;
  throw SchemaError("unknown skill '" + std::string(text) + "'");
}

double fare_multiplier(const EventFlags& f, const SimConfig& c) {
  double m = 1.0 + (f.heavy_rain ? c.heavy_rain_fare_uplift : 0.0);
  if (f.extreme_temperature) m *= c.extreme_temp_fare_factor;
  if (f.low_visibility) m *= c.low_visibility_fare_factor;
  if (f.high_wind) m *= c.high_wind_fare_factor;
  return m;
}

double demand_multiplier(const EventFlags& f, const SimConfig& c) {
  double m = 1.0;
  if (f.heavy_rain) m *= 1.0 + c.heavy_rain_demand_uplift;
  if (f.extreme_temperature) m *= 1.0 + c.extreme_temp_demand_uplift;
  if (f.low_visibility) m *= 1.0 + c.low_visibility_demand_uplift;
  if (f.high_wind) m *= c.high_wind_demand_factor;
  return m;
}

double rain_intensity_demand_factor(double rain_mm_per_hour, const SimConfig& c) {
  return 1.0 + c.rain_demand_per_mm * rain_mm_per_hour;
}

double traffic_speed_factor(const EventFlags& f, const SimConfig& c) {
  return f.low_visibility ? c.low_visibility_speed_factor : 1.0;
}

double wait_multiplier(const EventFlags& f, OperationalMode mode, const SimConfig& c) {
  double m = 1.0;
  if (f.heavy_rain)
    m *= mode == OperationalMode::WeatherAwareAI ? c.heavy_rain_wait_ai : c.heavy_rain_wait_traditional;
  if (f.extreme_temperature) m *= c.extreme_temp_wait_factor;
  if (f.low_visibility) m *= c.low_visibility_wait_factor;
  if (f.high_wind) m *= c.high_wind_wait_factor;
  return m;
}

double utilization_shift(const EventFlags& f, const SimConfig& c) {
  double s = 0.0;
  if (f.heavy_rain) s += c.heavy_rain_utilization_shift;
  if (f.extreme_temperature) s += c.extreme_temp_utilization_shift;
  if (f.low_visibility) s += c.low_visibility_utilization_shift;
  if (f.high_wind) s += c.high_wind_utilization_shift;
  return s;
}

MarketMultipliers multipliers(const EventFlags& f, OperationalMode mode, const SimConfig& c) {
  return {fare_multiplier(f, c), demand_multiplier(f, c), wait_multiplier(f, mode, c)};
}

namespace {

// Gaussian bump on the 24 h circle.
double bump(int hour, double centre, double width) {
  double d = std::fabs(hour - centre);
  d = std::min(d, 24.0 - d);
  return std::exp(-(d / width) * (d / width));
}

}  // namespace

TimeProfile::TimeProfile(const SimConfig& c) {
  if (c.flat_time_profile) {
    cells_.fill(1.0);
    return;
  }
  const double a = c.time_profile_amplitude;
  for (int dow = 0; dow < 7; ++dow) {
    const bool weekend = dow >= 5;
    for (int h = 0; h < 24; ++h) {
      // Weekends trade the commuter peaks for a stronger late-night bump.
      const double commute = weekend ? 0.5 : 1.0;
      const double night = weekend ? 0.9 : 0.6;
      cells_[dow * 24 + h] = 1.0 + a * (commute * bump(h, 8.0, 1.5) + commute * bump(h, 18.0, 2.0) +
                                        night * bump(h, 23.5, 1.5) - 0.9 * bump(h, 4.0, 2.0));
    }
  }
  const double mean = std::accumulate(cells_.begin(), cells_.end(), 0.0) / 168.0;
  for (auto& v : cells_) v /= mean;
}

double TimeProfile::operator()(int hour, int dow) const {
  if (hour < 0 || hour > 23) throw ValidationError("hour", "must be in [0, 23]");
  if (dow < 0 || dow > 6) throw ValidationError("day_of_week", "must be in [0, 6]");
  return cells_[dow * 24 + hour];
}

double time_factor(int hour, int dow, const SimConfig& c) { return TimeProfile(c)(hour, dow); }

void write_multiplier_table(const SimConfig& c, std::ostream& out) {
  using report::format_number;
  report::write_csv_row(out, {"heavy_rain", "extreme_temperature", "low_visibility", "high_wind", "mode",
                              "fare", "demand", "wait", "speed", "utilization_shift"});
  for (int bits = 0; bits < 16; ++bits) {
    EventFlags f{(bits & 1) != 0, (bits & 2) != 0, (bits & 4) != 0, (bits & 8) != 0};
    for (auto mode : kAllModes) {
      const auto m = multipliers(f, mode, c);
      report::write_csv_row(out, {std::to_string(f.heavy_rain), std::to_string(f.extreme_temperature),
                                  std::to_string(f.low_visibility), std::to_string(f.high_wind),
                                  std::string(to_string(mode)), format_number(m.fare),
                                  format_number(m.demand), format_number(m.wait),
                                  format_number(traffic_speed_factor(f, c)),
                                  format_number(utilization_shift(f, c))});
    }
  }
}

}  // namespace wxfleet
