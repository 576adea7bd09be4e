#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "wxfleet/config.hpp"
#include "wxfleet/rng.hpp"

namespace wxfleet {

/// Meteorological conditions for one simulated hour.
struct WeatherState {
  double rain_mm_per_hour = 0.0;  ///< >= 0
  double temperature_c = 20.0;
  double wind_mps = 0.0;       ///< >= 0
  double visibility_km = 20.0;  ///< > 0
  int hour_of_day = 0;         ///< 0..23
  int day = 1;                 ///< 1-based simulation day

  bool operator==(const WeatherState&) const = default;
};

/// Threshold events derived from a WeatherState. All boundaries are strict:
/// exactly 5 mm/h is not heavy rain, exactly 5 km is not low visibility.
struct EventFlags {
  bool heavy_rain = false;           ///< rain > 5 mm/h
  bool extreme_temperature = false;  ///< temperature < 5 C or > 35 C
  bool low_visibility = false;       ///< visibility < 5 km
  bool high_wind = false;            ///< wind > configured threshold

  bool any() const noexcept { return heavy_rain || extreme_temperature || low_visibility || high_wind; }
  bool operator==(const EventFlags&) const = default;
};

inline constexpr double kHeavyRainThresholdMm = 5.0;
inline constexpr double kColdThresholdC = 5.0;
inline constexpr double kHotThresholdC = 35.0;
inline constexpr double kLowVisibilityThresholdKm = 5.0;
inline constexpr double kDefaultHighWindThresholdMps = 10.0;

EventFlags classify(const WeatherState& state,
                    double high_wind_threshold_mps = kDefaultHighWindThresholdMps);

/// Contiguous hourly weather, hour 0 being day 1 00:00.
class WeatherSeries {
 public:
  WeatherSeries() = default;
  WeatherSeries(std::vector<WeatherState> states, int days);

  int days() const noexcept { return days_; }
  std::size_t hours() const noexcept { return states_.size(); }
  const WeatherState& at(std::size_t hour_index) const { return states_.at(hour_index); }
  const std::vector<WeatherState>& states() const noexcept { return states_; }

  bool operator==(const WeatherSeries&) const = default;

 private:
  std::vector<WeatherState> states_;
  int days_ = 0;
};

/// Two-part rain (Markov wet/dry occurrence, gamma intensity), sinusoidal
/// diurnal temperature with an AR(1) daily anomaly, AR(1) wind nudged up by
/// rain, visibility decaying with rain plus an independent persistent fog
/// process.
WeatherSeries generate_weather_series(const SimConfig& config, int days, Rng& rng);

/// Forecast issued `horizon_minutes` ahead of its target hour.
struct Forecast {
  int target_day = 1;
  int target_hour = 0;
  int horizon_minutes = 0;
  WeatherState predicted;
  EventFlags predicted_flags;
  bool correct = true;  ///< predicted_flags == realized flags
};

/// Probability that a forecast classifies the target hour's events correctly.
/// Piecewise linear through (0 min, 1.0), (60, acc_1h), (180, acc_3h) and
/// extrapolated with the last slope down to the configured floor.
double forecast_accuracy(int horizon_minutes, const SimConfig& config);

/// Forecast for the hour containing minute `now_minutes + horizon_minutes`
/// (minutes since the start of the series; `now_minutes` may be negative).
/// Throws ValidationError when the target lies outside the series.
Forecast forecast(const WeatherSeries& series, std::int64_t now_minutes, int horizon_minutes,
                  Rng& rng, const SimConfig& config);

/// One forecast per series hour at the configured dispatch horizon.
std::vector<Forecast> forecast_series(const WeatherSeries& series, const SimConfig& config,
                                      Rng& rng);

/// CSV with header day,hour,rain_mm,temp_c,wind_mps,visibility_km.
void write_weather_csv(const WeatherSeries& series, std::ostream& out);

}  // namespace wxfleet
