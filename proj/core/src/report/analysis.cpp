#include "wxfleet/report/analysis.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "wxfleet/market.hpp"
#include "wxfleet/report/csv.hpp"

namespace wxfleet::report {

namespace {

struct Table1Row {
  const char* metric;
  double traditional, weather_ai, improvement;
};
constexpr std::array<Table1Row, 4> kTable1{{{"revenue_per_min", 50.1, 103.9, 107.3},
                                            {"wait_min", 9.1, 5.1, -43.8},
                                            {"utilization_pct", 48.1, 78.4, 63.0},
                                            {"daily_earnings", 15493.0, 53326.0, 244.2}}};

constexpr std::array<std::pair<const char*, double>, 5> kTable2{{{"weather_prediction", 61.8},
                                                                 {"positioning", 23.7},
                                                                 {"route", 12.4},
                                                                 {"dynamic_pricing", 8.7},
                                                                 {"integration", 0.7}}};
constexpr double kTable2Total = 107.3;

// [skill] = {route-only, weather-aware}
constexpr std::array<std::array<double, 2>, 3> kTable4{{{22.0, 104.2}, {8.0, 108.7}, {3.0, 109.1}}};

// [weather variable][metric], rows in stats::kWeatherVariables order.
constexpr std::array<std::array<double, 4>, 4> kTable7{{{0.575, 0.551, 0.428, 0.522},
                                                        {0.442, 0.287, 0.356, 0.398},
                                                        {-0.384, -0.298, -0.267, -0.341},
                                                        {0.234, 0.167, 0.201, 0.198}}};

constexpr std::array<std::pair<double, double>, 3> kSignificance{{{-44.12, 6.24}, {93.74, 13.26}, {-356.80, 50.49}}};

double component(const ComponentGains& g, std::size_t i) {
  switch (i) {
    case 0: return g.weather_prediction;
    case 1: return g.positioning;
    case 2: return g.route;
    case 3: return g.dynamic_pricing;
    default: return g.integration;
  }
}

std::array<double, 4> metric_values(const ModeSummary& m) {
  return {m.revenue_per_min, m.wait_min, 100.0 * m.utilization, m.daily_earnings};
}

std::string result(const std::vector<Check>& checks, const std::string& id) {
  for (const auto& c : checks)
    if (c.id == id) return c.passed ? "pass" : "fail";
  return "";
}

}  // namespace

AnalysisResult analyze(const SimConfig& config, const PanelDataset& cross, ToleranceProfile profile) {
  AnalysisResult r;
  r.table1 = summarize(cross);
  r.correlations = stats::correlation_matrix(cross);
  r.decomposition = run_decomposition(config);

  const auto mode = cross.column("mode");
  for (const char* metric : {"revenue_per_min", "wait_min", "utilization"}) {
    const auto v = cross.column(metric);
    std::vector<double> trad, ai;
    for (std::size_t i = 0; i < v.size(); ++i) (mode[i] == 0.0 ? trad : ai).push_back(v[i]);
    r.significance.push_back({metric, stats::welch_t(trad, ai), stats::cohens_d(trad, ai)});
  }

  CheckList checks("analyze", profile);
  const auto& t1 = r.table1;
  checks.within_rel("table1.traditional.revenue_per_min", t1.traditional.revenue_per_min, 50.1, 0.03);
  checks.within_rel("table1.traditional.wait_min", t1.traditional.wait_min, 9.1, 0.05);
  checks.within_abs("table1.traditional.utilization_pct", 100.0 * t1.traditional.utilization, 48.1, 3.0);
  checks.within_abs("table1.improvement.revenue_pct", t1.revenue_improvement_pct, 107.3, 5.0);
  checks.within_abs("table1.improvement.wait_pct", t1.wait_improvement_pct, -43.8, 5.0);
  checks.within_abs("table1.improvement.utilization_pct", t1.utilization_improvement_pct, 63.0, 5.0);
  checks.within_rel("table1.traditional.daily_earnings", t1.traditional.daily_earnings, 15493.0, 0.10);
  checks.within_rel("table1.weather_ai.daily_earnings", t1.weather_ai.daily_earnings, 53326.0, 0.10);

  for (std::size_t w = 0; w < stats::kWeatherVariables.size(); ++w) {
    for (std::size_t m = 0; m < stats::kPerformanceMetrics.size(); ++m) {
      const auto& e = r.correlations[w * stats::kPerformanceMetrics.size() + m];
      const double ref = kTable7[w][m];
      const std::string id = "correlation." + e.x_name + "." + e.y_name;
      checks.flag(id + ".sign", e.ok() && std::signbit(e.r) == std::signbit(ref), e.error);
      if (w == 0 && m == 0) checks.within_abs(id, e.r, ref, 0.05);
      else if (w < 2) checks.within_abs(id, e.r, ref, 0.08);
    }
  }

  const auto& d = r.decomposition;
  const auto& g = d.realized_components;
  checks.within_abs("table2.components_sum_to_total", g.total(), d.headline_pct, 1e-9 * std::max(1.0, d.headline_pct));
  checks.within_abs("table2.weather_prediction", g.weather_prediction, 61.8, 5.0);

  for (auto s : kAllSkills) {
    const auto name = std::string(to_string(s));
    checks.within_abs("table4." + name + ".route_only_gain", d.skill_gain(s, OperationalMode::RouteOnlyAI),
                      kTable4[index_of(s)][0], 5.0);
    checks.within_abs("table4." + name + ".weather_ai_gain", d.skill_gain(s, OperationalMode::WeatherAwareAI),
                      kTable4[index_of(s)][1], 5.0);
  }
  const double ai_red = d.gap_reduction(OperationalMode::WeatherAwareAI);
  const double route_red = d.gap_reduction(OperationalMode::RouteOnlyAI);
  std::ostringstream detail;
  detail << "weather-aware gap reduction " << format_number(ai_red) << "% vs route-only " << format_number(route_red)
         << "%";
  auto& gap = checks.flag("table4.gap_reduction_weather_ai_ge_route_only", ai_red >= route_red, detail.str());
  gap.value = ai_red;
  gap.target = route_red;
  gap.rule = "min";

  // Informational magnitude classes.
  const auto& rev = r.significance.front();
  checks.above("significance.revenue_abs_t", std::fabs(rev.test.t), 30.0).gating = false;
  checks.above("significance.revenue_abs_d", std::fabs(rev.cohens_d), 3.0).gating = false;

  r.checks = std::move(checks.checks());
  return r;
}

std::vector<std::string> write_analysis(const AnalysisResult& r, const SimConfig& config,
                                        const std::filesystem::path& dir) {
  std::vector<std::string> files;
  auto emit = [&](const std::string& name, const std::string& text) {
    write_text_file(dir / name, text);
    files.push_back(name);
  };
  const auto& t1 = r.table1;
  const auto& d = r.decomposition;
  {
    std::ostringstream o;
    write_csv_row(o, {"metric", "traditional", "weather_ai", "improvement_pct", "reported_traditional",
                      "reported_weather_ai", "reported_improvement_pct", "check"});
    const auto trad = metric_values(t1.traditional);
    const auto ai = metric_values(t1.weather_ai);
    const std::array<double, 4> imp{t1.revenue_improvement_pct, t1.wait_improvement_pct,
                                    t1.utilization_improvement_pct, t1.earnings_improvement_pct};
    const std::array<std::string, 4> check_ids{
        "table1.improvement.revenue_pct", "table1.improvement.wait_pct", "table1.improvement.utilization_pct",
        "table1.traditional.daily_earnings"};
    for (std::size_t i = 0; i < 4; ++i) {
      const auto& p = kTable1[i];
      std::string verdict = result(r.checks, check_ids[i]);
      if (i < 3) {
        const std::string base = i == 0   ? "table1.traditional.revenue_per_min"
                                 : i == 1 ? "table1.traditional.wait_min"
                                          : "table1.traditional.utilization_pct";
        if (result(r.checks, base) == "fail") verdict = "fail";
      } else if (result(r.checks, "table1.weather_ai.daily_earnings") == "fail") {
        verdict = "fail";
      }
      write_csv_row(o, {p.metric, format_number(trad[i]), format_number(ai[i]), format_number(imp[i]),
                        format_number(p.traditional), format_number(p.weather_ai), format_number(p.improvement),
                        verdict});
    }
    emit("table1.csv", o.str());
  }
  {
    std::ostringstream o;
    write_csv_row(o, {"component", "revenue_increase_pct", "reported_revenue_increase_pct", "delta_pp", "notes"});
    for (std::size_t i = 0; i < kTable2.size(); ++i) {
      const double v = component(d.realized_components, i);
      std::string note;
      if (i == 1) note = "includes pre-positioning " + format_number(d.prepositioning_pct) + " pp";
      if (i == 0) note = "forecast hit rate " + format_number(d.forecast_hit_rate);
      write_csv_row(o, {kTable2[i].first, format_number(v), format_number(kTable2[i].second),
                        format_number(v - kTable2[i].second), note});
    }
    write_csv_row(o, {"total", format_number(d.realized_components.total()), format_number(kTable2Total),
                      format_number(d.realized_components.total() - kTable2Total),
                      "headline " + format_number(d.headline_pct)});
    emit("table2.csv", o.str());
  }
  {
    std::ostringstream o;
    write_csv_row(o, {"skill", "traditional_revenue", "route_only_revenue", "weather_ai_revenue",
                      "route_only_gain_pct", "weather_ai_gain_pct", "difference_pp", "reported_route_only_gain_pct",
                      "reported_weather_ai_gain_pct", "reported_difference_pp", "check"});
    for (auto s : kAllSkills) {
      const auto& rev = d.revenue[index_of(s)];
      const double ro = d.skill_gain(s, OperationalMode::RouteOnlyAI);
      const double ai = d.skill_gain(s, OperationalMode::WeatherAwareAI);
      const auto& p = kTable4[index_of(s)];
      const auto name = std::string(to_string(s));
      const bool ok = result(r.checks, "table4." + name + ".route_only_gain") == "pass" &&
                      result(r.checks, "table4." + name + ".weather_ai_gain") == "pass";
      write_csv_row(o, {name, format_number(rev[0]), format_number(rev[1]), format_number(rev[2]), format_number(ro),
                        format_number(ai), format_number(ai - ro), format_number(p[0]), format_number(p[1]),
                        format_number(p[1] - p[0]), ok ? "pass" : "fail"});
    }
    emit("table4.csv", o.str());
  }
  {
    std::ostringstream o;
    write_csv_row(o, {"mode", "skill_gap_pct", "gap_reduction_pct"});
    for (auto m : kAllModes)
      write_csv_row(o, {std::string(to_string(m)), format_number(d.skill_gap(m)),
                        m == OperationalMode::Traditional ? "0" : format_number(d.gap_reduction(m))});
    emit("skill_gap.csv", o.str());
  }
  {
    std::ostringstream o;
    write_csv_row(o, {"mode", "revenue_per_min", "improvement_pct"});
    std::array<double, 3> mean{};
    for (auto s : kAllSkills)
      for (std::size_t m = 0; m < 3; ++m) mean[m] += d.revenue[index_of(s)][m] / 3.0;
    for (auto m : kAllModes) {
      const auto i = static_cast<std::size_t>(m);
      write_csv_row(o, {std::string(to_string(m)), format_number(mean[i]),
                        format_number((mean[i] / mean[0] - 1.0) * 100.0)});
    }
    emit("mode_comparison.csv", o.str());
  }
  {
    std::ostringstream o;
    write_csv_row(o, {"weather_variable", "metric", "r", "p_value", "stars", "n", "reported_r", "error"});
    for (std::size_t w = 0; w < stats::kWeatherVariables.size(); ++w)
      for (std::size_t m = 0; m < stats::kPerformanceMetrics.size(); ++m) {
        const auto& e = r.correlations[w * stats::kPerformanceMetrics.size() + m];
        write_csv_row(o, {e.x_name, e.y_name, format_number(e.r), format_number(e.p_value),
                          e.ok() ? stats::significance_stars(e.p_value) : "", std::to_string(e.n),
                          format_number(kTable7[w][m]), e.error});
      }
    emit("correlation_matrix.csv", o.str());
  }
  {
    std::ostringstream o;
    write_csv_row(o, {"metric", "t", "df", "p_value", "cohens_d", "reported_t", "reported_cohens_d"});
    for (std::size_t i = 0; i < r.significance.size(); ++i) {
      const auto& s = r.significance[i];
      write_csv_row(o, {s.metric, format_number(s.test.t), format_number(s.test.df), format_number(s.test.p_value),
                        format_number(s.cohens_d), format_number(kSignificance[i].first),
                        format_number(kSignificance[i].second)});
    }
    emit("significance.csv", o.str());
  }
  {
    std::ostringstream o;
    write_multiplier_table(config, o);
    emit("market_multipliers.csv", o.str());
  }
  return files;
}

}  // namespace wxfleet::report
