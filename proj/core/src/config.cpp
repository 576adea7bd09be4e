#include "wxfleet/config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "wxfleet/error.hpp"
#include "wxfleet/report/hash.hpp"

namespace wxfleet {

namespace {

using nlohmann::json;

// X-list of every config key. Order here is the validation order for the
// plain range checks.
#define WXFLEET_CONFIG_FIELDS(X)                     \
  X(seed)                                            \
  X(n_traditional_trips)                             \
  X(n_ai_trips)                                      \
  X(days_cross_sectional)                            \
  X(days_rollout)                                    \
  X(rollout_start_day)                               \
  X(rollout_end_day)                                 \
  X(drivers)                                         \
  X(working_minutes_per_day)                         \
  X(working_days_per_year)                           \
  X(base_revenue_per_min)                            \
  X(rain_probability)                                \
  X(rain_persistence)                                \
  X(rain_gamma_shape)                                \
  X(rain_gamma_scale_mm)                             \
  X(temp_mean_c)                                     \
  X(temp_diurnal_amplitude_c)                        \
  X(temp_peak_hour)                                  \
  X(temp_day_sd_c)                                   \
  X(temp_day_autocorr)                               \
  X(temp_hour_sd_c)                                  \
  X(wind_mean_mps)                                   \
  X(wind_autocorr)                                   \
  X(wind_innovation_sd_mps)                          \
  X(wind_rain_coupling)                              \
  X(fog_probability)                                 \
  X(fog_persistence)                                 \
  X(visibility_clear_km)                             \
  X(visibility_rain_decay)                           \
  X(visibility_noise_sd)                             \
  X(fog_visibility_min_km)                           \
  X(fog_visibility_max_km)                           \
  X(high_wind_threshold_mps)                         \
  X(forecast_accuracy_1h)                            \
  X(forecast_accuracy_3h)                            \
  X(forecast_accuracy_floor)                         \
  X(forecast_horizon_minutes)                        \
  X(heavy_rain_fare_uplift)                          \
  X(heavy_rain_demand_uplift)                        \
  X(rain_demand_per_mm)                              \
  X(extreme_temp_demand_uplift)                      \
  X(low_visibility_demand_uplift)                    \
  X(extreme_temp_fare_factor)                        \
  X(high_wind_fare_factor)                           \
  X(high_wind_demand_factor)                         \
  X(low_visibility_fare_factor)                      \
  X(low_visibility_speed_factor)                     \
  X(heavy_rain_wait_traditional)                     \
  X(heavy_rain_wait_ai)                              \
  X(extreme_temp_wait_factor)                        \
  X(low_visibility_wait_factor)                      \
  X(high_wind_wait_factor)                           \
  X(heavy_rain_utilization_shift)                    \
  X(extreme_temp_utilization_shift)                  \
  X(low_visibility_utilization_shift)                \
  X(high_wind_utilization_shift)                     \
  X(time_profile_amplitude)                          \
  X(flat_time_profile)                               \
  X(skill_shares)                                    \
  X(skill_multipliers)                               \
  X(experience_min_years)                            \
  X(experience_max_years)                            \
  X(gain_weather_prediction)                         \
  X(gain_positioning)                                \
  X(gain_route)                                      \
  X(gain_dynamic_pricing)                            \
  X(gain_integration)                                \
  X(ai_skill_gains)                                  \
  X(route_skill_gains)                               \
  X(route_headline_gain)                             \
  X(traditional_delay_min)                           \
  X(traditional_delay_max)                           \
  X(ai_lead_min)                                     \
  X(ai_lead_max)                                     \
  X(traditional_efficiency_min)                      \
  X(traditional_efficiency_max)                      \
  X(ai_efficiency_min)                               \
  X(ai_efficiency_max)                               \
  X(learning_ramp_days)                              \
  X(learning_initial_fraction)                       \
  X(revenue_noise_sigma)                             \
  X(wait_noise_sd)                                   \
  X(utilization_noise_sd)                            \
  X(revenue_utilization_noise_corr)                  \
  X(clear_weather_revenue_factor)                    \
  X(wait_base_traditional)                           \
  X(wait_base_ai)                                    \
  X(utilization_scale_traditional)                   \
  X(utilization_scale_ai)                            \
  X(prepositioning_utilization_per_lead_minute)      \
  X(prepositioning_revenue_per_util_pt)              \
  X(ai_effect_scale)

template <typename T>
void read_value(const json& j, const char* key, T& out) {
  try {
    if constexpr (std::is_same_v<T, std::uint64_t>) {
      if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
        throw ParseError(std::string(key) + ": expected a non-negative integer");
      out = j.get<std::uint64_t>();
    } else if constexpr (std::is_same_v<T, int>) {
      if (!j.is_number_integer()) throw ParseError(std::string(key) + ": expected an integer");
      out = j.get<int>();
    } else if constexpr (std::is_same_v<T, bool>) {
      if (!j.is_boolean()) throw ParseError(std::string(key) + ": expected a boolean");
      out = j.get<bool>();
    } else if constexpr (std::is_same_v<T, double>) {
      if (!j.is_number()) throw ParseError(std::string(key) + ": expected a number");
      out = j.get<double>();
    } else {
      if (!j.is_array() || j.size() != out.size())
        throw ParseError(std::string(key) + ": expected an array of " +
                         std::to_string(out.size()) + " numbers");
      for (std::size_t i = 0; i < out.size(); ++i) {
        if (!j[i].is_number()) throw ParseError(std::string(key) + ": expected numbers");
        out[i] = j[i].get<double>();
      }
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string(key) + ": " + e.what());
  }
}

void require(bool ok, const char* field, const char* what) {
  if (!ok) throw ValidationError(field, what);
}

bool is_probability(double p) { return std::isfinite(p) && p >= 0.0 && p <= 1.0; }

}  // namespace

void validate(const SimConfig& c) {
  require(c.n_traditional_trips > 0, "n_traditional_trips", "must be > 0");
  require(c.n_ai_trips > 0, "n_ai_trips", "must be > 0");
  require(c.days_cross_sectional > 0, "days_cross_sectional", "must be > 0");
  require(c.days_rollout > 0, "days_rollout", "must be > 0");
  require(c.rollout_start_day >= 1, "rollout_start_day", "must be >= 1");
  require(c.rollout_start_day < c.rollout_end_day, "rollout_start_day",
          "must be < rollout_end_day");
  require(c.rollout_end_day < c.days_rollout, "rollout_end_day", "must be < days_rollout");
  require(c.drivers > 0, "drivers", "must be > 0");
  require(c.working_minutes_per_day > 0, "working_minutes_per_day", "must be > 0");
  require(c.working_minutes_per_day % 60 == 0 && c.working_minutes_per_day <= 24 * 60,
          "working_minutes_per_day", "must be a whole number of hours <= 24 h");
  require(c.working_days_per_year > 0, "working_days_per_year", "must be > 0");
  require(std::isfinite(c.base_revenue_per_min) && c.base_revenue_per_min > 0.0,
          "base_revenue_per_min", "must be > 0");

  require(is_probability(c.rain_probability), "rain_probability", "must lie in [0,1]");
  require(is_probability(c.rain_persistence) && c.rain_persistence < 1.0, "rain_persistence",
          "must lie in [0,1)");
  require(c.rain_gamma_shape > 0.0, "rain_gamma_shape", "must be > 0");
  require(c.rain_gamma_scale_mm > 0.0, "rain_gamma_scale_mm", "must be > 0");
  require(c.temp_diurnal_amplitude_c >= 0.0, "temp_diurnal_amplitude_c", "must be >= 0");
  require(c.temp_day_sd_c >= 0.0, "temp_day_sd_c", "must be >= 0");
  require(c.temp_day_autocorr >= 0.0 && c.temp_day_autocorr < 1.0, "temp_day_autocorr",
          "must lie in [0,1)");
  require(c.temp_hour_sd_c >= 0.0, "temp_hour_sd_c", "must be >= 0");
  require(c.wind_mean_mps >= 0.0, "wind_mean_mps", "must be >= 0");
  require(c.wind_autocorr >= 0.0 && c.wind_autocorr < 1.0, "wind_autocorr", "must lie in [0,1)");
  require(c.wind_innovation_sd_mps >= 0.0, "wind_innovation_sd_mps", "must be >= 0");
  require(c.wind_rain_coupling >= 0.0, "wind_rain_coupling", "must be >= 0");
  require(is_probability(c.fog_probability), "fog_probability", "must lie in [0,1]");
  require(is_probability(c.fog_persistence) && c.fog_persistence < 1.0, "fog_persistence",
          "must lie in [0,1)");
  require(c.visibility_clear_km > 0.0, "visibility_clear_km", "must be > 0");
  require(c.visibility_rain_decay >= 0.0, "visibility_rain_decay", "must be >= 0");
  require(c.visibility_noise_sd >= 0.0, "visibility_noise_sd", "must be >= 0");
  require(c.fog_visibility_min_km > 0.0, "fog_visibility_min_km", "must be > 0");
  require(c.fog_visibility_min_km <= c.fog_visibility_max_km, "fog_visibility_max_km",
          "must be >= fog_visibility_min_km");
  require(c.high_wind_threshold_mps > 0.0, "high_wind_threshold_mps", "must be > 0");

  require(is_probability(c.forecast_accuracy_1h), "forecast_accuracy_1h", "must lie in [0,1]");
  require(is_probability(c.forecast_accuracy_3h), "forecast_accuracy_3h", "must lie in [0,1]");
  require(is_probability(c.forecast_accuracy_floor), "forecast_accuracy_floor",
          "must lie in [0,1]");
  require(c.forecast_accuracy_3h <= c.forecast_accuracy_1h, "forecast_accuracy_3h",
          "must be <= forecast_accuracy_1h");
  require(c.forecast_accuracy_floor <= c.forecast_accuracy_3h, "forecast_accuracy_floor",
          "must be <= forecast_accuracy_3h");
  require(c.forecast_horizon_minutes >= 0, "forecast_horizon_minutes", "must be >= 0");

  require(c.heavy_rain_fare_uplift >= 0.0, "heavy_rain_fare_uplift", "must be >= 0");
  require(c.heavy_rain_demand_uplift >= 0.0, "heavy_rain_demand_uplift", "must be >= 0");
  require(c.rain_demand_per_mm >= 0.0, "rain_demand_per_mm", "must be >= 0");
  require(c.extreme_temp_demand_uplift >= 0.0, "extreme_temp_demand_uplift", "must be >= 0");
  require(c.low_visibility_demand_uplift >= 0.0, "low_visibility_demand_uplift", "must be >= 0");
  require(c.extreme_temp_fare_factor >= 1.0, "extreme_temp_fare_factor", "must be >= 1");
  require(c.high_wind_fare_factor >= 1.0, "high_wind_fare_factor", "must be >= 1");
  require(c.high_wind_demand_factor >= 1.0, "high_wind_demand_factor", "must be >= 1");
  require(c.low_visibility_fare_factor >= 1.0, "low_visibility_fare_factor", "must be >= 1");
  require(c.low_visibility_speed_factor > 0.0 && c.low_visibility_speed_factor <= 1.0,
          "low_visibility_speed_factor", "must lie in (0,1]");
  require(c.heavy_rain_wait_traditional >= 0.0, "heavy_rain_wait_traditional", "must be >= 0");
  require(c.heavy_rain_wait_ai >= 0.0, "heavy_rain_wait_ai", "must be >= 0");
  require(c.heavy_rain_wait_ai <= c.heavy_rain_wait_traditional, "heavy_rain_wait_ai",
          "must be <= heavy_rain_wait_traditional");
  require(c.extreme_temp_wait_factor >= 0.0, "extreme_temp_wait_factor", "must be >= 0");
  require(c.low_visibility_wait_factor >= 0.0, "low_visibility_wait_factor", "must be >= 0");
  require(c.high_wind_wait_factor >= 0.0, "high_wind_wait_factor", "must be >= 0");
  require(c.time_profile_amplitude >= 0.0 && c.time_profile_amplitude < 1.0,
          "time_profile_amplitude", "must lie in [0,1)");

  double share_sum = 0.0;
  for (double s : c.skill_shares) {
    require(is_probability(s), "skill_shares", "entries must lie in [0,1]");
    share_sum += s;
  }
  require(std::abs(share_sum - 1.0) < 1e-9, "skill_shares", "must sum to 1");
  for (double m : c.skill_multipliers)
    require(m > 0.0, "skill_multipliers", "entries must be > 0");
  require(c.experience_min_years >= 0.0, "experience_min_years", "must be >= 0");
  require(c.experience_min_years <= c.experience_max_years, "experience_max_years",
          "must be >= experience_min_years");
  require(c.gain_weather_prediction >= 0.0, "gain_weather_prediction", "must be >= 0");
  require(c.gain_positioning >= 0.0, "gain_positioning", "must be >= 0");
  require(c.gain_route >= 0.0, "gain_route", "must be >= 0");
  require(c.gain_dynamic_pricing >= 0.0, "gain_dynamic_pricing", "must be >= 0");
  require(c.gain_integration >= 0.0, "gain_integration", "must be >= 0");
  for (double g : c.ai_skill_gains) require(g >= 0.0, "ai_skill_gains", "entries must be >= 0");
  for (double g : c.route_skill_gains)
    require(g >= 0.0, "route_skill_gains", "entries must be >= 0");
  require(c.traditional_delay_min >= 0.0, "traditional_delay_min", "must be >= 0");
  require(c.traditional_delay_min <= c.traditional_delay_max, "traditional_delay_max",
          "must be >= traditional_delay_min");
  require(c.ai_lead_min >= 0.0, "ai_lead_min", "must be >= 0");
  require(c.ai_lead_min <= c.ai_lead_max, "ai_lead_max", "must be >= ai_lead_min");
  require(is_probability(c.traditional_efficiency_min), "traditional_efficiency_min",
          "must lie in [0,1]");
  require(is_probability(c.traditional_efficiency_max), "traditional_efficiency_max",
          "must lie in [0,1]");
  require(c.traditional_efficiency_min <= c.traditional_efficiency_max,
          "traditional_efficiency_max", "must be >= traditional_efficiency_min");
  require(is_probability(c.ai_efficiency_min), "ai_efficiency_min", "must lie in [0,1]");
  require(is_probability(c.ai_efficiency_max), "ai_efficiency_max", "must lie in [0,1]");
  require(c.ai_efficiency_min <= c.ai_efficiency_max, "ai_efficiency_max",
          "must be >= ai_efficiency_min");
  require(c.learning_ramp_days >= 0, "learning_ramp_days", "must be >= 0");
  require(is_probability(c.learning_initial_fraction), "learning_initial_fraction",
          "must lie in [0,1]");

  require(c.revenue_noise_sigma >= 0.0, "revenue_noise_sigma", "must be >= 0");
  require(c.wait_noise_sd >= 0.0, "wait_noise_sd", "must be >= 0");
  require(c.utilization_noise_sd >= 0.0, "utilization_noise_sd", "must be >= 0");
  require(c.revenue_utilization_noise_corr >= -1.0 && c.revenue_utilization_noise_corr <= 1.0,
          "revenue_utilization_noise_corr", "must lie in [-1,1]");

  require(c.clear_weather_revenue_factor > 0.0, "clear_weather_revenue_factor", "must be > 0");
  require(c.wait_base_traditional >= 0.0, "wait_base_traditional", "must be >= 0");
  require(c.wait_base_ai >= 0.0, "wait_base_ai", "must be >= 0");
  require(c.utilization_scale_traditional >= 0.0, "utilization_scale_traditional",
          "must be >= 0");
  require(c.utilization_scale_ai >= 0.0, "utilization_scale_ai", "must be >= 0");
  require(c.prepositioning_utilization_per_lead_minute >= 0.0,
          "prepositioning_utilization_per_lead_minute", "must be >= 0");
  require(c.prepositioning_revenue_per_util_pt >= 0.0, "prepositioning_revenue_per_util_pt",
          "must be >= 0");
  require(c.ai_effect_scale >= 0.0, "ai_effect_scale", "must be >= 0");
}

SimConfig parse_config(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("config: top-level value must be a JSON object");

  SimConfig config;
  std::map<std::string, bool> seen;
#define WXFLEET_READ(name)                                       \
  if (auto it = doc.find(#name); it != doc.end()) {              \
    read_value(*it, #name, config.name);                         \
    seen[#name] = true;                                          \
  }
  WXFLEET_CONFIG_FIELDS(WXFLEET_READ)
#undef WXFLEET_READ
  for (const auto& item : doc.items()) {
    if (!seen.count(item.key())) throw ParseError("config: unknown key '" + item.key() + "'");
  }
  validate(config);
  return config;
}

SimConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config file: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string to_json(const SimConfig& config) {
  json doc = json::object();
#define WXFLEET_WRITE(name) doc[#name] = config.name;
  WXFLEET_CONFIG_FIELDS(WXFLEET_WRITE)
#undef WXFLEET_WRITE
  return doc.dump(2);
}

std::string config_hash(const SimConfig& config) { return report::sha256_hex(to_json(config)); }

}  // namespace wxfleet
