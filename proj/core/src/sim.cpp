#include "wxfleet/sim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "wxfleet/error.hpp"

namespace wxfleet {

HourDraws HourDraws::draw(Rng& rng) {
  HourDraws d;
  d.z_revenue = rng.normal();
  d.u_efficiency = rng.uniform();
  d.u_delay = rng.uniform();
  d.z_wait = rng.normal();
  d.z_utilization = rng.normal();
  return d;
}

MarketModel::MarketModel(const SimConfig& config, WeatherSeries series, std::vector<Forecast> forecasts)
    : config_(config), series_(std::move(series)), forecasts_(std::move(forecasts)) {
  if (forecasts_.size() != series_.hours())
    throw ValidationError("forecasts", "one forecast per series hour required");
  const TimeProfile profile(config_);
  flags_.reserve(series_.hours());
  market_.reserve(series_.hours());
  for (const auto& s : series_.states()) {
    const auto f = classify(s, config_.high_wind_threshold_mps);
    flags_.push_back(f);
    market_.push_back(profile(s.hour_of_day, day_of_week(s.day)) * fare_multiplier(f, config_) *
                      demand_multiplier(f, config_) *
                      rain_intensity_demand_factor(s.rain_mm_per_hour, config_) *
                      traffic_speed_factor(f, config_));
  }
  if (!market_.empty())
    mean_market_ = std::accumulate(market_.begin(), market_.end(), 0.0) / static_cast<double>(market_.size());
}

double MarketModel::expected_rate(double skill_multiplier) const {
  return config_.base_revenue_per_min * config_.clear_weather_revenue_factor * skill_multiplier *
         mean_market_;
}

HourOutcome simulate_hour(const MarketModel& m, std::size_t hour, SkillLevel skill, OperationalMode mode,
                          double ramp, const HourDraws& d) {
  const auto& c = m.config();
  const auto& flags = m.flags(hour);
  const auto& fc = m.forecast(hour);
  const double skill_mult = skill_multiplier(skill, c);
  const double base = c.base_revenue_per_min * c.clear_weather_revenue_factor * skill_mult;
  const double sigma = c.revenue_noise_sigma;

  HourOutcome out;
  out.traditional_revenue = base * m.market_factor(hour) * std::exp(sigma * d.z_revenue - 0.5 * sigma * sigma);

  const double eff = positioning_efficiency_from(mode, d.u_efficiency, c);
  out.response_delay_min = response_delay_minutes_from(mode, fc.correct, d.u_delay, c);

  const bool ai = mode == OperationalMode::WeatherAwareAI;
  const double util_scale = ai ? c.utilization_scale_ai : c.utilization_scale_traditional;
  const double rho = c.revenue_utilization_noise_corr;
  const double z_u = rho * d.z_revenue + std::sqrt(1.0 - rho * rho) * d.z_utilization;
  const double u0 = eff * util_scale + utilization_shift(flags, c) + c.utilization_noise_sd * z_u;
  const double u_plain = std::clamp(u0, 0.0, 1.0);
  out.utilization = u_plain;

  const double rate = m.expected_rate(skill_mult);
  const double scale = c.ai_effect_scale;
  if (ai) {
    const double total = mode_components(mode, c).total();
    const double skill_scale = total > 0.0 ? c.ai_skill_gains[index_of(skill)] / total : 0.0;
    const double k = rate / 100.0 * skill_scale * ramp * scale;
    const double acc = forecast_accuracy(c.forecast_horizon_minutes, c);
    const double eff_mid = 0.5 * (c.traditional_efficiency_min + c.traditional_efficiency_max);
    const double eff_span = c.ai_efficiency_max + c.ai_efficiency_min - 2.0 * eff_mid;
    out.contribution_yen.weather_prediction = fc.correct ? k * c.gain_weather_prediction / acc : 0.0;
    out.contribution_yen.positioning =
        eff_span > 0.0 ? k * c.gain_positioning * 2.0 * (eff - eff_mid) / eff_span : k * c.gain_positioning;
    out.contribution_yen.route = k * c.gain_route;
    out.contribution_yen.dynamic_pricing = k * c.gain_dynamic_pricing;
    out.contribution_yen.integration = k * c.gain_integration;
    if (flags.heavy_rain && out.response_delay_min < 0.0) {
      const double boost = c.prepositioning_utilization_per_lead_minute * (-out.response_delay_min) * ramp * scale;
      out.utilization = std::clamp(u0 + boost, 0.0, 1.0);
      out.utilization_gain = out.utilization - u_plain;
      out.prepositioning_yen = c.prepositioning_revenue_per_util_pt * 100.0 * out.utilization_gain;
      out.contribution_yen.positioning += out.prepositioning_yen;
    }
  } else if (mode == OperationalMode::RouteOnlyAI) {
    out.contribution_yen.route = rate * c.route_skill_gains[index_of(skill)] / 100.0 * scale;
  }
  out.revenue_per_min = std::max(0.0, out.traditional_revenue + out.contribution_yen.total());

  const double wait_base = ai ? c.wait_base_ai : c.wait_base_traditional;
  out.wait_min = std::max(0.0, wait_base * wait_multiplier(flags, mode, c) + c.wait_noise_sd * d.z_wait);
  return out;
}

namespace {

MarketModel build_market(const SimConfig& c, int days, const char* weather_label, const char* forecast_label) {
  Rng weather_rng = spawn_stream(c, weather_label);
  auto series = generate_weather_series(c, days, weather_rng);
  Rng forecast_rng = spawn_stream(c, forecast_label);
  auto forecasts = forecast_series(series, c, forecast_rng);
  return MarketModel(c, std::move(series), std::move(forecasts));
}

void fill_weather(PanelRecord& r, const WeatherState& s, const EventFlags& f) {
  r.rain_mm = s.rain_mm_per_hour;
  r.temp_c = s.temperature_c;
  r.wind_mps = s.wind_mps;
  r.visibility_km = s.visibility_km;
  r.heavy_rain = f.heavy_rain;
  r.heavy_rain_share = f.heavy_rain;
  r.extreme_temp_share = f.extreme_temperature;
  r.low_visibility_share = f.low_visibility;
  r.high_wind_share = f.high_wind;
}

}  // namespace

WeatherSeries cross_sectional_weather(const SimConfig& c) {
  Rng rng = spawn_stream(c, "weather");
  return generate_weather_series(c, c.days_cross_sectional, rng);
}

std::vector<DriverProfile> rollout_fleet(const SimConfig& c) {
  Rng rng = spawn_stream(c, "rollout.fleet");
  return make_fleet(c, rng, true);
}

PanelDataset run_cross_sectional(const SimConfig& c) {
  validate(c);
  const MarketModel market = build_market(c, c.days_cross_sectional, "weather", "forecast");
  Rng fleet_rng = spawn_stream(c, "fleet");
  const auto fleet = make_fleet(c, fleet_rng, false);
  Rng rng = spawn_stream(c, "demand");

  PanelDataset panel;
  panel.experiment = Experiment::CrossSectional;
  panel.seed = c.seed;
  panel.config_hash = config_hash(c);
  const int total = c.n_traditional_trips + c.n_ai_trips;
  panel.records.reserve(static_cast<std::size_t>(total));
  const auto last_hour = static_cast<std::int64_t>(market.hours()) - 1;
  for (int i = 0; i < total; ++i) {
    const auto mode = i < c.n_traditional_trips ? OperationalMode::Traditional : OperationalMode::WeatherAwareAI;
    const auto hour = static_cast<std::size_t>(rng.uniform_int(0, last_hour));
    const auto& driver = fleet[static_cast<std::size_t>(rng.uniform_int(0, c.drivers - 1))];
    const auto draws = HourDraws::draw(rng);
    const auto out = simulate_hour(market, hour, driver.skill, mode, 1.0, draws);
    const auto& s = market.series().at(hour);

    PanelRecord r;
    r.driver_id = driver.driver_id;
    r.day = s.day;
    r.period = s.hour_of_day;
    r.mode = mode;
    r.treated = mode == OperationalMode::WeatherAwareAI;
    r.revenue_per_min = out.revenue_per_min;
    r.wait_min = out.wait_min;
    r.utilization = out.utilization;
    r.daily_earnings = r.revenue_per_min * c.working_minutes_per_day * r.utilization;
    fill_weather(r, s, market.flags(hour));
    r.skill = driver.skill;
    r.weekend = is_weekend(s.day);
    r.experience_years = driver.experience_years + (s.day - 1) / 365.0;
    panel.records.push_back(r);
  }
  return panel;
}

PanelDataset run_staggered_rollout(const SimConfig& c) {
  validate(c);
  const MarketModel market = build_market(c, c.days_rollout, "rollout.weather", "rollout.forecast");
  const auto fleet = rollout_fleet(c);
  Rng rng = spawn_stream(c, "rollout.demand");
  const int shift_hours = c.working_minutes_per_day / 60;
  const auto n_hours = market.hours();

  PanelDataset panel;
  panel.experiment = Experiment::Rollout;
  panel.seed = c.seed;
  panel.config_hash = config_hash(c);
  panel.records.reserve(fleet.size() * static_cast<std::size_t>(c.days_rollout));
  for (const auto& driver : fleet) {
    const int implement = *driver.implement_day;
    for (int day = 1; day <= c.days_rollout; ++day) {
      const bool treated = day >= implement;
      const auto mode = treated ? OperationalMode::WeatherAwareAI : OperationalMode::Traditional;
      const double ramp = learning_ramp(day - implement, c);

      PanelRecord r;
      r.driver_id = driver.driver_id;
      r.day = day;
      r.period = driver.shift_start_hour;
      r.mode = mode;
      r.treated = treated;
      r.implement_day = implement;
      r.relative_day = day - implement;
      r.skill = driver.skill;
      r.weekend = is_weekend(day);
      r.experience_years = driver.experience_years + (day - 1) / 365.0;
      for (int j = 0; j < shift_hours; ++j) {
        const std::size_t hour =
            (static_cast<std::size_t>(day - 1) * 24 + static_cast<std::size_t>(driver.shift_start_hour + j)) % n_hours;
        const auto draws = HourDraws::draw(rng);
        const auto out = simulate_hour(market, hour, driver.skill, mode, ramp, draws);
        const auto& s = market.series().at(hour);
        const auto& f = market.flags(hour);
        r.revenue_per_min += out.revenue_per_min;
        r.wait_min += out.wait_min;
        r.utilization += out.utilization;
        r.rain_mm += s.rain_mm_per_hour;
        r.temp_c += s.temperature_c;
        r.wind_mps += s.wind_mps;
        r.visibility_km += s.visibility_km;
        r.heavy_rain = r.heavy_rain || f.heavy_rain;
        r.heavy_rain_share += f.heavy_rain;
        r.extreme_temp_share += f.extreme_temperature;
        r.low_visibility_share += f.low_visibility;
        r.high_wind_share += f.high_wind;
      }
      const double n = shift_hours;
      for (double* v : {&r.revenue_per_min, &r.wait_min, &r.utilization, &r.rain_mm, &r.temp_c, &r.wind_mps,
                        &r.visibility_km, &r.heavy_rain_share, &r.extreme_temp_share, &r.low_visibility_share,
                        &r.high_wind_share})
        *v /= n;
      r.daily_earnings = r.revenue_per_min * c.working_minutes_per_day * r.utilization;
      panel.records.push_back(r);
    }
  }
  return panel;
}

SummaryTable summarize(const PanelDataset& panel) {
  if (panel.experiment != Experiment::CrossSectional)
    throw ValidationError("experiment", "summary requires the cross-sectional panel");
  SummaryTable t;
  for (const auto& r : panel.records) {
    ModeSummary* m = nullptr;
    if (r.mode == OperationalMode::Traditional) m = &t.traditional;
    else if (r.mode == OperationalMode::WeatherAwareAI) m = &t.weather_ai;
    else continue;
    ++m->n;
    m->revenue_per_min += r.revenue_per_min;
    m->wait_min += r.wait_min;
    m->utilization += r.utilization;
    m->daily_earnings += r.daily_earnings;
  }
  if (t.traditional.n == 0 || t.weather_ai.n == 0)
    throw ValidationError("mode", "both traditional and weather-aware records required");
  for (ModeSummary* m : {&t.traditional, &t.weather_ai}) {
    const double n = static_cast<double>(m->n);
    m->revenue_per_min /= n;
    m->wait_min /= n;
    m->utilization /= n;
    m->daily_earnings /= n;
  }
  auto pct = [](double ai, double trad) { return (ai - trad) / trad * 100.0; };
  t.revenue_improvement_pct = pct(t.weather_ai.revenue_per_min, t.traditional.revenue_per_min);
  t.wait_improvement_pct = pct(t.weather_ai.wait_min, t.traditional.wait_min);
  t.utilization_improvement_pct = pct(t.weather_ai.utilization, t.traditional.utilization);
  t.earnings_improvement_pct = pct(t.weather_ai.daily_earnings, t.traditional.daily_earnings);
  return t;
}

double DecompositionResult::skill_gain(SkillLevel skill, OperationalMode mode) const {
  const auto& row = revenue[index_of(skill)];
  return (row[static_cast<std::size_t>(mode)] / row[0] - 1.0) * 100.0;
}

double DecompositionResult::skill_gap(OperationalMode mode) const {
  const auto m = static_cast<std::size_t>(mode);
  return (revenue[index_of(SkillLevel::High)][m] / revenue[index_of(SkillLevel::Low)][m] - 1.0) * 100.0;
}

double DecompositionResult::gap_reduction(OperationalMode mode) const {
  return (1.0 - skill_gap(mode) / skill_gap(OperationalMode::Traditional)) * 100.0;
}

DecompositionResult run_decomposition(const SimConfig& c, int days, std::size_t records_per_skill) {
  validate(c);
  if (records_per_skill == 0) throw ValidationError("records_per_skill", "must be > 0");
  // One stream feeds weather, forecasts and draws so the decomposition never
  // disturbs the experiment streams.
  Rng rng = spawn_stream(c, "decomposition");
  auto series = generate_weather_series(c, days, rng);
  auto forecasts = forecast_series(series, c, rng);
  const MarketModel market(c, std::move(series), std::move(forecasts));
  const auto last_hour = static_cast<std::int64_t>(market.hours()) - 1;

  DecompositionResult res;
  res.records_per_skill = records_per_skill;
  double trad_sum = 0.0;
  double ai_sum = 0.0;
  double hits = 0.0;
  double prepositioned = 0.0;
  ComponentGains comp;
  double prepos = 0.0;
  for (auto skill : kAllSkills) {
    std::array<double, 3> sums{};
    for (std::size_t i = 0; i < records_per_skill; ++i) {
      const auto hour = static_cast<std::size_t>(rng.uniform_int(0, last_hour));
      const auto draws = HourDraws::draw(rng);
      for (auto mode : kAllModes) {
        const auto out = simulate_hour(market, hour, skill, mode, 1.0, draws);
        sums[static_cast<std::size_t>(mode)] += out.revenue_per_min;
        if (mode == OperationalMode::Traditional) trad_sum += out.revenue_per_min;
        if (mode != OperationalMode::WeatherAwareAI) continue;
        ai_sum += out.revenue_per_min;
        comp.weather_prediction += out.contribution_yen.weather_prediction;
        comp.positioning += out.contribution_yen.positioning;
        comp.route += out.contribution_yen.route;
        comp.dynamic_pricing += out.contribution_yen.dynamic_pricing;
        comp.integration += out.contribution_yen.integration;
        prepos += out.prepositioning_yen;
        hits += market.forecast(hour).correct;
        prepositioned += out.response_delay_min < 0.0;
      }
    }
    for (std::size_t m = 0; m < 3; ++m)
      res.revenue[index_of(skill)][m] = sums[m] / static_cast<double>(records_per_skill);
  }
  const double n = 3.0 * static_cast<double>(records_per_skill);
  const double to_pct = 100.0 / trad_sum;
  res.realized_components.weather_prediction = comp.weather_prediction * to_pct;
  res.realized_components.positioning = comp.positioning * to_pct;
  res.realized_components.route = comp.route * to_pct;
  res.realized_components.dynamic_pricing = comp.dynamic_pricing * to_pct;
  res.realized_components.integration = comp.integration * to_pct;
  res.prepositioning_pct = prepos * to_pct;
  res.headline_pct = (ai_sum / trad_sum - 1.0) * 100.0;
  res.forecast_hit_rate = hits / n;
  res.prepositioning_share = prepositioned / n;
  return res;
}

}  // namespace wxfleet
