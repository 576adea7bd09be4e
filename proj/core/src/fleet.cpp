#include "wxfleet/fleet.hpp"

#include <algorithm>
#include <ostream>
#include <string>

#include "wxfleet/error.hpp"
#include "wxfleet/report/csv.hpp"

namespace wxfleet {

std::vector<DriverProfile> make_fleet(const SimConfig& c, Rng& rng, bool rollout) {
  if (c.drivers <= 0) throw ValidationError("drivers", "must be > 0");
  std::vector<DriverProfile> fleet;
  fleet.reserve(static_cast<std::size_t>(c.drivers));
  for (int i = 0; i < c.drivers; ++i) {
    DriverProfile d;
    d.driver_id = i + 1;
    d.skill = kAllSkills[rng.categorical(c.skill_shares)];
    d.base_skill_multiplier = skill_multiplier(d.skill, c);
    d.experience_years = rng.uniform(c.experience_min_years, c.experience_max_years);
    d.shift_start_hour = static_cast<int>(rng.uniform_int(0, 23));
    const auto day = rng.uniform_int(c.rollout_start_day, c.rollout_end_day);
    if (rollout) {
      d.assigned_mode = OperationalMode::WeatherAwareAI;
      d.implement_day = static_cast<int>(day);
    }
    fleet.push_back(d);
  }
  return fleet;
}

ComponentGains mode_components(OperationalMode mode, const SimConfig& c) {
  ComponentGains g;
  switch (mode) {
    case OperationalMode::Traditional:
      break;
    case OperationalMode::RouteOnlyAI:
      g.route = c.route_headline_gain;
      break;
    case OperationalMode::WeatherAwareAI:
      g.weather_prediction = c.gain_weather_prediction;
      g.positioning = c.gain_positioning;
      g.route = c.gain_route;
      g.dynamic_pricing = c.gain_dynamic_pricing;
      g.integration = c.gain_integration;
      break;
  }
  return g;
}

double skill_mode_gain(SkillLevel skill, OperationalMode mode, const SimConfig& c) {
  switch (mode) {
    case OperationalMode::Traditional: return 0.0;
    case OperationalMode::RouteOnlyAI: return c.route_skill_gains[index_of(skill)];
    case OperationalMode::WeatherAwareAI: return c.ai_skill_gains[index_of(skill)];
  }
  return 0.0;
}

double skill_multiplier(SkillLevel skill, const SimConfig& c) {
  return c.skill_multipliers[index_of(skill)];
}

double response_delay_minutes(OperationalMode mode, const Forecast& f, Rng& rng, const SimConfig& c) {
  return response_delay_minutes_from(mode, f.correct, rng.uniform(), c);
}

double response_delay_minutes_from(OperationalMode mode, bool correct, double u, const SimConfig& c) {
  if (mode == OperationalMode::WeatherAwareAI && correct)
    return -(c.ai_lead_min + (c.ai_lead_max - c.ai_lead_min) * u);
  return c.traditional_delay_min + (c.traditional_delay_max - c.traditional_delay_min) * u;
}

double positioning_efficiency_from(OperationalMode mode, double u, const SimConfig& c) {
  if (mode == OperationalMode::WeatherAwareAI)
    return c.ai_efficiency_min + (c.ai_efficiency_max - c.ai_efficiency_min) * u;
  return c.traditional_efficiency_min + (c.traditional_efficiency_max - c.traditional_efficiency_min) * u;
}

double positioning_efficiency(OperationalMode mode, Rng& rng, const SimConfig& c) {
  return positioning_efficiency_from(mode, rng.uniform(), c);
}

double learning_ramp(int days_since, const SimConfig& c) {
  if (days_since < 0) return 0.0;
  if (c.learning_ramp_days <= 0) return 1.0;
  const double r0 = c.learning_initial_fraction;
  const double progress = std::min(days_since, c.learning_ramp_days) / static_cast<double>(c.learning_ramp_days);
  return r0 + (1.0 - r0) * progress;
}

void write_fleet_csv(const std::vector<DriverProfile>& fleet, std::ostream& out) {
  report::write_csv_row(out, {"driver_id", "skill", "mode", "implement_day"});
  for (const auto& d : fleet)
    report::write_csv_row(out, {std::to_string(d.driver_id), std::string(to_string(d.skill)),
                                std::string(to_string(d.assigned_mode)),
                                d.implement_day ? std::to_string(*d.implement_day) : "NA"});
}

}  // namespace wxfleet
