#include "wxfleet/weather.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include "wxfleet/error.hpp"
#include "wxfleet/report/csv.hpp"

namespace wxfleet {

EventFlags classify(const WeatherState& s, double high_wind_threshold_mps) {
  EventFlags f;
  f.heavy_rain = s.rain_mm_per_hour > kHeavyRainThresholdMm;
  f.extreme_temperature = s.temperature_c < kColdThresholdC || s.temperature_c > kHotThresholdC;
  f.low_visibility = s.visibility_km < kLowVisibilityThresholdKm;
  f.high_wind = s.wind_mps > high_wind_threshold_mps;
  return f;
}

WeatherSeries::WeatherSeries(std::vector<WeatherState> states, int days)
    : states_(std::move(states)), days_(days) {
  if (days_ < 0 || states_.size() != static_cast<std::size_t>(days_) * 24)
    throw ValidationError("weather_series", "length must equal days * 24");
  for (std::size_t i = 0; i < states_.size(); ++i) {
    const auto& s = states_[i];
    if (s.hour_of_day != static_cast<int>(i % 24) || s.day != static_cast<int>(i / 24) + 1)
      throw ValidationError("weather_series", "hours must be contiguous");
    if (!(s.rain_mm_per_hour >= 0.0) || !(s.visibility_km > 0.0) || !(s.wind_mps >= 0.0))
      throw ValidationError("weather_series", "state out of range at hour " + std::to_string(i));
  }
}

namespace {

// Two-state Markov chain with stationary probability `p` and lag-1
// autocorrelation `rho`.
struct MarkovChain {
  double p_enter;
  double p_stay;
  MarkovChain(double p, double rho) : p_enter(p * (1.0 - rho)), p_stay(p * (1.0 - rho) + rho) {}
  bool step(bool state, double u) const { return u < (state ? p_stay : p_enter); }
};

}  // namespace

WeatherSeries generate_weather_series(const SimConfig& c, int days, Rng& rng) {
  if (days <= 0) throw ValidationError("days", "must be > 0");
  const MarkovChain rain_chain(c.rain_probability, c.rain_persistence);
  const MarkovChain fog_chain(c.fog_probability, c.fog_persistence);
  const double two_pi = 2.0 * std::numbers::pi;

  std::vector<WeatherState> states;
  states.reserve(static_cast<std::size_t>(days) * 24);

  bool wet = rng.uniform() < c.rain_probability;
  bool fog = rng.uniform() < c.fog_probability;
  const double wind_stationary_sd =
      c.wind_innovation_sd_mps / std::sqrt(1.0 - c.wind_autocorr * c.wind_autocorr);
  double wind_anomaly = wind_stationary_sd * rng.normal();
  double day_anomaly = c.temp_day_sd_c * rng.normal();
  const double day_innovation_sd =
      c.temp_day_sd_c * std::sqrt(1.0 - c.temp_day_autocorr * c.temp_day_autocorr);

  for (int d = 0; d < days; ++d) {
    if (d > 0) day_anomaly = c.temp_day_autocorr * day_anomaly + day_innovation_sd * rng.normal();
    for (int h = 0; h < 24; ++h) {
      if (d > 0 || h > 0) {
        wet = rain_chain.step(wet, rng.uniform());
        fog = fog_chain.step(fog, rng.uniform());
        wind_anomaly = c.wind_autocorr * wind_anomaly + c.wind_innovation_sd_mps * rng.normal();
      }
      WeatherState s;
      s.day = d + 1;
      s.hour_of_day = h;
      s.rain_mm_per_hour = wet ? rng.gamma(c.rain_gamma_shape, c.rain_gamma_scale_mm) : 0.0;
      s.temperature_c = c.temp_mean_c +
                        c.temp_diurnal_amplitude_c * std::cos(two_pi * (h - c.temp_peak_hour) / 24.0) +
                        day_anomaly + c.temp_hour_sd_c * rng.normal();
      s.wind_mps =
          std::max(0.0, c.wind_mean_mps + wind_anomaly + c.wind_rain_coupling * s.rain_mm_per_hour);
      const double clear_vis = c.visibility_clear_km *
                               std::exp(-c.visibility_rain_decay * s.rain_mm_per_hour) *
                               std::exp(c.visibility_noise_sd * rng.normal());
      s.visibility_km = fog ? rng.uniform(c.fog_visibility_min_km, c.fog_visibility_max_km)
                            : std::clamp(clear_vis, 0.05, 30.0);
      states.push_back(s);
    }
  }
  return WeatherSeries(std::move(states), days);
}

double forecast_accuracy(int horizon_minutes, const SimConfig& c) {
  if (horizon_minutes <= 0) return 1.0;
  const double h = horizon_minutes;
  if (h <= 60.0) return 1.0 + (c.forecast_accuracy_1h - 1.0) * h / 60.0;
  const double slope = (c.forecast_accuracy_3h - c.forecast_accuracy_1h) / 120.0;
  const double acc = c.forecast_accuracy_1h + slope * (h - 60.0);
  if (h <= 180.0) return acc;
  return std::max(c.forecast_accuracy_floor, acc);
}

namespace {

// Moves the variable behind one flag across its threshold so that the
// predicted state classifies differently from the truth.
WeatherState perturb(const WeatherState& truth, const EventFlags& flags, int which, double u,
                     double wind_threshold) {
  WeatherState p = truth;
  switch (which) {
    case 0:
      p.rain_mm_per_hour = flags.heavy_rain ? kHeavyRainThresholdMm * (0.2 + 0.8 * u)
                                            : kHeavyRainThresholdMm + 0.5 + 5.0 * u;
      break;
    case 1:
      if (flags.extreme_temperature)
        p.temperature_c = truth.temperature_c > kHotThresholdC ? kHotThresholdC - 0.5 - 3.0 * u
                                                                : kColdThresholdC + 0.5 + 3.0 * u;
      else
        p.temperature_c = truth.temperature_c >= 20.0 ? kHotThresholdC + 0.5 + 3.0 * u
                                                      : kColdThresholdC - 0.5 - 3.0 * u;
      break;
    case 2:
      p.visibility_km = flags.low_visibility ? kLowVisibilityThresholdKm + 1.0 + 10.0 * u
                                             : 1.0 + 3.5 * u;
      break;
    default:
      p.wind_mps = flags.high_wind ? wind_threshold * (0.5 + 0.45 * u) : wind_threshold + 0.5 + 5.0 * u;
      break;
  }
  return p;
}

}  // namespace

Forecast forecast(const WeatherSeries& series, std::int64_t now_minutes, int horizon_minutes,
                  Rng& rng, const SimConfig& c) {
  if (horizon_minutes < 0) throw ValidationError("horizon_minutes", "must be >= 0");
  const std::int64_t target_minute = now_minutes + horizon_minutes;
  if (target_minute < 0 || target_minute >= static_cast<std::int64_t>(series.hours()) * 60)
    throw ValidationError("forecast", "target time outside the weather series");
  const auto& truth = series.at(static_cast<std::size_t>(target_minute / 60));
  const EventFlags flags = classify(truth, c.high_wind_threshold_mps);

  Forecast f;
  f.target_day = truth.day;
  f.target_hour = truth.hour_of_day;
  f.horizon_minutes = horizon_minutes;
  // Fixed draw count per call keeps downstream streams aligned.
  const double u_correct = rng.uniform();
  const double u_which = rng.uniform();
  const double u_size = rng.uniform();
  f.correct = horizon_minutes == 0 || u_correct < forecast_accuracy(horizon_minutes, c);
  if (f.correct) {
    f.predicted = truth;
    f.predicted_flags = flags;
  } else {
    const int which = std::min(3, static_cast<int>(u_which * 4.0));
    f.predicted = perturb(truth, flags, which, u_size, c.high_wind_threshold_mps);
    f.predicted_flags = classify(f.predicted, c.high_wind_threshold_mps);
  }
  return f;
}

std::vector<Forecast> forecast_series(const WeatherSeries& series, const SimConfig& c, Rng& rng) {
  std::vector<Forecast> out;
  out.reserve(series.hours());
  const int horizon = c.forecast_horizon_minutes;
  for (std::size_t i = 0; i < series.hours(); ++i) {
    const std::int64_t now = static_cast<std::int64_t>(i) * 60 - horizon;
    out.push_back(forecast(series, now, horizon, rng, c));
  }
  return out;
}

void write_weather_csv(const WeatherSeries& series, std::ostream& out) {
  using report::format_number;
  report::write_csv_row(out, {"day", "hour", "rain_mm", "temp_c", "wind_mps", "visibility_km"});
  for (const auto& s : series.states()) {
    report::write_csv_row(out, {std::to_string(s.day), std::to_string(s.hour_of_day),
                                format_number(s.rain_mm_per_hour), format_number(s.temperature_c),
                                format_number(s.wind_mps), format_number(s.visibility_km)});
  }
}

}  // namespace wxfleet
