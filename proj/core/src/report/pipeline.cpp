#include "wxfleet/report/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "wxfleet/error.hpp"
#include "wxfleet/report/analysis.hpp"
#include "wxfleet/report/causal.hpp"
#include "wxfleet/report/csv.hpp"
#include "wxfleet/report/manifest.hpp"
#include "wxfleet/sim.hpp"

namespace wxfleet::report {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

void prepare_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError(dir.string() + ": " + ec.message());
}

// Adds or refreshes `files` in manifest.json; a manifest from another
// config or seed is replaced.
void update_manifest(const SimConfig& config, const fs::path& dir, const std::vector<std::string>& files) {
  const auto path = dir / "manifest.json";
  RunManifest m;
  if (fs::exists(path)) {
    try {
      m = parse_manifest(read_text_file(path));
    } catch (const Error&) {
      m = {};
    }
  }
  const auto hash = config_hash(config);
  if (m.config_hash != hash || m.seed != config.seed) m = {};
  m.tool_version = library_version();
  m.config_hash = hash;
  m.seed = config.seed;
  std::erase_if(m.files, [&](const ManifestFile& f) {
    return std::find(files.begin(), files.end(), f.path) != files.end();
  });
  for (const auto& f : files) add_file(m, dir, f);
  std::sort(m.files.begin(), m.files.end(), [](const auto& a, const auto& b) { return a.path < b.path; });
  write_text_file(path, to_json(m));
}

template <class Fn>
std::string render(Fn&& fn) {
  std::ostringstream o;
  fn(o);
  return o.str();
}

ordered_json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return std::stod(format_number(v));
}

ordered_json optional_number(const std::optional<double>& v) { return v ? number(*v) : ordered_json("never"); }

}  // namespace

CommandResult cmd_simulate(const SimConfig& config, const PipelineOptions& opt) {
  validate(config);
  prepare_dir(opt.out_dir);
  CommandResult r;
  auto emit = [&](const std::string& name, const std::string& text) {
    write_text_file(opt.out_dir / name, text);
    r.files.push_back(name);
  };
  const auto cross = run_cross_sectional(config);
  emit("cross_sectional.csv", render([&](std::ostream& o) { write_panel_csv(cross, o); }));
  const auto rollout = run_staggered_rollout(config);
  emit("rollout.csv", render([&](std::ostream& o) { write_panel_csv(rollout, o); }));
  const auto weather = cross_sectional_weather(config);
  emit("weather.csv", render([&](std::ostream& o) { write_weather_csv(weather, o); }));
  const auto fleet = rollout_fleet(config);
  emit("fleet.csv", render([&](std::ostream& o) { write_fleet_csv(fleet, o); }));
  update_manifest(config, opt.out_dir, r.files);
  r.files.push_back("manifest.json");
  return r;
}

CommandResult cmd_analyze(const SimConfig& config, const PipelineOptions& opt) {
  validate(config);
  const auto cross = read_panel_csv(opt.out_dir / "cross_sectional.csv");
  const auto result = analyze(config, cross, opt.profile);
  CommandResult r;
  r.checks = result.checks;
  r.files = write_analysis(result, config, opt.out_dir);
  update_manifest(config, opt.out_dir, r.files);
  return r;
}

CommandResult cmd_causal(const SimConfig& config, const PipelineOptions& opt) {
  validate(config);
  const auto rollout = read_panel_csv(opt.out_dir / "rollout.csv");
  CausalOptions co;
  co.placebo_draws = opt.placebo_draws;
  const auto result = run_causal(config, rollout, opt.profile, co);
  CommandResult r;
  r.checks = result.checks;
  r.files = write_causal(result, opt.out_dir);
  update_manifest(config, opt.out_dir, r.files);
  return r;
}

std::string econ_report_json(const std::vector<economics::EconReport>& reports, int working_days,
                             const std::vector<std::string>& notes) {
  ordered_json doc;
  doc["working_days"] = working_days;
  if (!reports.empty()) {
    doc["discount_rate"] = number(reports.front().inputs.discount_rate);
    doc["horizon_years"] = reports.front().inputs.horizon_years;
  }
  doc["market_context"] = {{"weather_ai_market_usd", number(economics::reported::kWeatherMarketUsd)},
                           {"route_ai_market_usd", number(economics::reported::kRouteMarketUsd)}};
  ordered_json scenarios = ordered_json::array();
  for (const auto& rep : reports) {
    const auto& in = rep.inputs;
    ordered_json s;
    s["source"] = in.source;
    s["costs"] = {{"weather_ai", {{"implementation", number(in.weather.implementation_cost)},
                                  {"annual_operating", number(in.weather.annual_operating_cost)}}},
                  {"route_only", {{"implementation", number(in.route.implementation_cost)},
                                  {"annual_operating", number(in.route.annual_operating_cost)}}}};
    s["weather_ai_annual_benefit"] = number(in.weather_annual_benefit);
    s["route_only_annual_benefit"] = number(in.route_annual_benefit);
    s["weather_ai_roi_pct"] = number(rep.weather_roi);
    s["route_only_roi_pct"] = number(rep.route_roi);
    s["weather_ai_payback_months"] = optional_number(rep.weather_payback_months);
    s["route_only_payback_months"] = optional_number(rep.route_payback_months);
    s["weather_ai_npv"] = number(rep.weather_npv);
    s["route_only_npv"] = number(rep.route_npv);
    ordered_json by_rate = ordered_json::array();
    for (const auto& [rate, v] : rep.weather_npv_by_rate) by_rate.push_back({{"rate", number(rate)}, {"npv", number(v)}});
    s["weather_ai_npv_by_rate"] = by_rate;
    ordered_json cmp = ordered_json::array();
    for (const auto& c : rep.comparisons)
      cmp.push_back({{"quantity", c.quantity},
                     {"computed", number(c.computed)},
                     {"reported", number(c.reported)},
                     {"delta", number(c.delta())}});
    s["comparisons"] = cmp;
    scenarios.push_back(s);
  }
  doc["scenarios"] = scenarios;
  doc["notes"] = notes;
  return doc.dump(2) + "\n";
}

CommandResult cmd_econ(const SimConfig& config, const PipelineOptions& opt) {
  validate(config);
  prepare_dir(opt.out_dir);
  const int wd = opt.working_days.value_or(config.working_days_per_year);
  if (wd <= 0) throw ValidationError("working-days", "must be > 0");
  if (opt.discount_rate < 0.0) throw ValidationError("discount-rate", "must be >= 0");
  if (opt.horizon_years < 1) throw ValidationError("horizon-years", "must be >= 1");

  std::vector<std::string> notes{
      "annual benefit from the published daily delta at " + std::to_string(wd) + " working days is " +
          format_number(economics::annual_benefit(economics::reported::kDailyEarningsDelta, wd)) +
          "; the published 13,809,103 matches 365 days",
      "route-only annual benefit = traditional daily earnings x 14% x working days",
      "published ROI, payback and benefit figures are not mutually consistent under the ROI formula; deltas are "
      "reported, not reconciled"};
  auto with_rates = [&](economics::EconInputs in) {
    in.discount_rate = opt.discount_rate;
    in.horizon_years = opt.horizon_years;
    return in;
  };
  std::vector<economics::EconReport> reports{economics::build_report(with_rates(economics::reported_inputs(wd)), wd)};
  const auto cross_path = opt.out_dir / "cross_sectional.csv";
  if (fs::exists(cross_path)) {
    const auto t1 = summarize(read_panel_csv(cross_path));
    const double delta = t1.weather_ai.daily_earnings - t1.traditional.daily_earnings;
    reports.push_back(economics::build_report(
        with_rates(economics::simulated_inputs(std::max(0.0, delta), t1.traditional.daily_earnings, wd)), wd));
  } else {
    notes.push_back("no cross_sectional.csv in the output directory; simulated scenario omitted");
  }

  CommandResult r;
  auto emit = [&](const std::string& name, const std::string& text) {
    write_text_file(opt.out_dir / name, text);
    r.files.push_back(name);
  };
  emit("econ_report.json", econ_report_json(reports, wd, notes));
  emit("sensitivity.csv", render([&](std::ostream& o) {
         write_csv_row(o, {"source", "benefit_change_pct", "weather_ai_roi_pct", "route_only_roi_pct", "ratio",
                           "reported_weather_ai_roi_pct", "reported_route_only_roi_pct", "reported_ratio",
                           "delta_weather_ai_roi_pct", "delta_route_only_roi_pct"});
         for (const auto& rep : reports)
           for (const auto& s : rep.sensitivity) {
             const double nan = std::nan("");
             const double pw = s.reported_weather_roi.value_or(nan), pr = s.reported_route_roi.value_or(nan);
             write_csv_row(o, {rep.inputs.source, format_number(s.benefit_change_pct), format_number(s.weather_roi),
                               format_number(s.route_roi), format_number(s.ratio), format_number(pw),
                               format_number(pr), format_number(s.reported_ratio.value_or(nan)),
                               format_number(s.weather_roi - pw), format_number(s.route_roi - pr)});
           }
       }));

  CheckList checks("econ", opt.profile);
  using namespace economics;
  const double stated = reported::kAnnualBenefit;
  checks.within_abs("econ.roi_formula", roi_pct(stated, kWeatherAiCosts),
                    (stated - 30000.0 - 150000.0) / 150000.0 * 100.0, 1e-9);
  const double monthly = (stated - kWeatherAiCosts.annual_operating_cost) / 12.0;
  checks.within_abs("econ.payback_identity", payback_months(kWeatherAiCosts, stated).value_or(NAN) * monthly,
                    kWeatherAiCosts.implementation_cost, 1e-6);
  checks.within_abs("econ.npv_rate0_h1", npv(stated, kWeatherAiCosts, 0.0, 1), stated - 30000.0 - 150000.0, 1e-6);
  for (const auto& s : reports.front().sensitivity)
    checks.within_abs("econ.sensitivity_ratio[" + format_number(s.benefit_change_pct) + "]", s.ratio, 6.4, 0.2,
                      "reported inputs, route-only = 14% of traditional daily earnings");
  checks.flag("econ.deltas_reported", !reports.front().comparisons.empty());
  r.checks = std::move(checks.checks());
  update_manifest(config, opt.out_dir, r.files);
  return r;
}

CommandResult cmd_all(const SimConfig& config, const PipelineOptions& opt) {
  for (const auto& s : opt.skip)
    if (std::find(kStages.begin(), kStages.end(), s) == kStages.end())
      throw ValidationError("skip", "unknown stage '" + s + "'");
  validate(config);
  prepare_dir(opt.out_dir);
  CommandResult all;
  auto merge = [&](const CommandResult& r) {
    all.checks.insert(all.checks.end(), r.checks.begin(), r.checks.end());
    all.files.insert(all.files.end(), r.files.begin(), r.files.end());
  };
  if (!opt.skip.contains("simulate")) merge(cmd_simulate(config, opt));
  if (!opt.skip.contains("analyze")) merge(cmd_analyze(config, opt));
  if (!opt.skip.contains("causal")) merge(cmd_causal(config, opt));
  if (!opt.skip.contains("econ")) merge(cmd_econ(config, opt));
  write_text_file(opt.out_dir / "checks.csv", render([&](std::ostream& o) { write_checks_csv(all.checks, o); }));
  all.files.push_back("checks.csv");
  update_manifest(config, opt.out_dir, {"checks.csv"});
  return all;
}

}  // namespace wxfleet::report
