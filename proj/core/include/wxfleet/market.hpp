#pragma once

#include <array>
#include <iosfwd>

#include "wxfleet/config.hpp"
#include "wxfleet/modes.hpp"
#include "wxfleet/weather.hpp"

namespace wxfleet {

struct MarketMultipliers {
  double fare = 1.0;
  double demand = 1.0;
  double wait = 1.0;
};

/// 1 + heavy-rain uplift, times the configured factors of any other active
/// event. Simultaneous events compose multiplicatively.
double fare_multiplier(const EventFlags& flags, const SimConfig& config);

/// (1 + heavy-rain uplift)(1 + extreme-temperature uplift)(1 + low-visibility
/// uplift) times the high-wind factor.
double demand_multiplier(const EventFlags& flags, const SimConfig& config);

/// Continuous demand slope in rain intensity, applied on top of the
/// flag-based demand multiplier: 1 + rain_demand_per_mm * rain.
double rain_intensity_demand_factor(double rain_mm_per_hour, const SimConfig& config);

/// Trips completed per minute relative to clear roads; below 1 in low visibility.
double traffic_speed_factor(const EventFlags& flags, const SimConfig& config);

/// Heavy rain multiplies waits by 2.07 (traditional and route-only) or 1.44
/// (weather-aware); other events add their configured factors.
double wait_multiplier(const EventFlags& flags, OperationalMode mode, const SimConfig& config);

/// Additive utilization shift from weather events (fraction).
double utilization_shift(const EventFlags& flags, const SimConfig& config);

MarketMultipliers multipliers(const EventFlags& flags, OperationalMode mode, const SimConfig& config);

/// Hour-of-day by day-of-week demand shape, normalized to mean exactly 1
/// over the 168 cells. Day of week 0 is Monday.
class TimeProfile {
 public:
  explicit TimeProfile(const SimConfig& config);
  double operator()(int hour, int day_of_week) const;

 private:
  std::array<double, 168> cells_{};
};

double time_factor(int hour, int day_of_week, const SimConfig& config);

/// Day of week (0 = Monday) of a 1-based simulation day; day 1 is a Monday.
inline int day_of_week(int day) { return (day - 1) % 7; }
inline bool is_weekend(int day) { return day_of_week(day) >= 5; }

/// Audit dump: one row per event-flag combination and mode.
/// Header: heavy_rain,extreme_temperature,low_visibility,high_wind,mode,fare,demand,wait,speed,utilization_shift
void write_multiplier_table(const SimConfig& config, std::ostream& out);

}  // namespace wxfleet
