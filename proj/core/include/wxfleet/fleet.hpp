#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "wxfleet/config.hpp"
#include "wxfleet/modes.hpp"
#include "wxfleet/rng.hpp"
#include "wxfleet/weather.hpp"

namespace wxfleet {

struct DriverProfile {
  int driver_id = 0;
  SkillLevel skill = SkillLevel::Medium;
  double base_skill_multiplier = 1.0;
  OperationalMode assigned_mode = OperationalMode::Traditional;
  std::optional<int> implement_day;  ///< set only for rollout drivers
  double experience_years = 1.0;     ///< at day 1
  int shift_start_hour = 0;          ///< rollout shifts start here, 0..23
};

/// Revenue contributions in percent of the traditional expected rate.
struct ComponentGains {
  double weather_prediction = 0.0;
  double positioning = 0.0;
  double route = 0.0;
  double dynamic_pricing = 0.0;
  double integration = 0.0;

  double total() const noexcept {
    return weather_prediction + positioning + route + dynamic_pricing + integration;
  }
};

/// Skills from the configured shares, experience uniform on the configured
/// range, shift start uniform over the day. With `rollout` set every driver
/// also gets an implement_day uniform on [rollout_start_day, rollout_end_day]
/// and is assigned WeatherAwareAI; assignment never looks at skill.
std::vector<DriverProfile> make_fleet(const SimConfig& config, Rng& rng, bool rollout);

ComponentGains mode_components(OperationalMode mode, const SimConfig& config);

/// Per-skill productivity gain (percent) of a mode over traditional.
double skill_mode_gain(SkillLevel skill, OperationalMode mode, const SimConfig& config);

double skill_multiplier(SkillLevel skill, const SimConfig& config);

/// Minutes between event onset and the driver's response; negative means the
/// driver was repositioned before onset. Always consumes exactly one draw.
double response_delay_minutes(OperationalMode mode, const Forecast& forecast, Rng& rng,
                              const SimConfig& config);

/// Same rule for an already drawn uniform `u`.
double response_delay_minutes_from(OperationalMode mode, bool forecast_correct, double u,
                                   const SimConfig& config);

/// Positioning efficiency band of the mode. Always consumes exactly one draw.
double positioning_efficiency(OperationalMode mode, Rng& rng, const SimConfig& config);

/// Same mapping as positioning_efficiency for an already drawn uniform.
double positioning_efficiency_from(OperationalMode mode, double u, const SimConfig& config);

/// Fraction of the full AI effect reached `days_since` days after
/// implementation: linear from learning_initial_fraction at day 0 to 1 at
/// learning_ramp_days. Zero before implementation.
double learning_ramp(int days_since, const SimConfig& config);

/// Header: driver_id,skill,mode,implement_day (NA when absent).
void write_fleet_csv(const std::vector<DriverProfile>& fleet, std::ostream& out);

}  // namespace wxfleet
