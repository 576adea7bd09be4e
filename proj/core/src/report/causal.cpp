#include "wxfleet/report/causal.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "wxfleet/econometrics/psm.hpp"
#include "wxfleet/econometrics/rdd.hpp"
#include "wxfleet/error.hpp"
#include "wxfleet/report/csv.hpp"
#include "wxfleet/rng.hpp"
#include "wxfleet/stats.hpp"

namespace wxfleet::report {

namespace econ = econometrics;

namespace {

constexpr double kTargetYen = 53.8;
constexpr double kTargetIv = 0.68;

struct ReportedRow {
  const char* method;
  double effect, pct, se;
};
constexpr ReportedRow kTable5[]{{"before_after", 53.8, 107.3, 1.24}, {"event_study", 53.8, 107.3, 1.24},
                             {"did", 52.1, 104.2, 1.89},          {"rdd", 51.7, 103.4, 2.34},
                             {"psm", 54.2, 108.4, 1.67},          {"iv", 0.68, NAN, 0.089}};

template <class T>
std::optional<T> attempt(const std::string& name, std::map<std::string, std::string>& errors,
                         const std::function<T()>& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    errors[name] = e.what();
    return std::nullopt;
  }
}

std::vector<std::string> estimate_cells(const std::optional<econ::EffectEstimate>& e) {
  if (!e) return std::vector<std::string>(8, "NA");
  return {format_number(e->effect), format_number(e->pct_impact), format_number(e->se), format_number(e->t),
          format_number(e->p_value), format_number(e->ci_low), format_number(e->ci_high), std::to_string(e->n)};
}

}  // namespace

CausalResult run_causal(const SimConfig& config, const PanelDataset& rollout, ToleranceProfile profile,
                        const CausalOptions& options) {
  if (rollout.experiment != Experiment::Rollout)
    throw ValidationError("experiment", "causal analysis requires the rollout panel");
  CausalResult r;
  const auto frame = econ::make_frame(rollout);
  auto& errors = r.errors;

  r.event_study = attempt<econ::EventStudyResult>("event_study", errors, [&] { return econ::event_study(frame); });
  r.yen_rows.emplace_back("before_after", attempt<econ::EffectEstimate>("before_after", errors, [&] {
                            return econ::before_after(frame);
                          }));
  r.yen_rows.emplace_back("event_study", r.event_study ? std::optional(r.event_study->post_average) : std::nullopt);
  r.yen_rows.emplace_back("did", attempt<econ::EffectEstimate>("did", errors, [&] { return econ::did(frame); }));
  r.yen_rows.emplace_back("rdd", attempt<econ::EffectEstimate>("rdd", errors, [&] { return econ::rdd(frame); }));
  r.yen_rows.emplace_back("psm", attempt<econ::EffectEstimate>("psm", errors, [&] {
                            return econ::match_att(frame, econ::fit_propensity(frame));
                          }));
  r.iv = attempt<econ::IvEstimate>("iv", errors, [&] { return econ::iv_2sls(frame); });
  r.parallel_trends = attempt<econ::ParallelTrendsResult>("parallel_trends", errors,
                                                          [&] { return econ::parallel_trends_test(frame); });
  r.placebo = attempt<econ::PlaceboReport>("placebo", errors, [&] {
    Rng rng = spawn_stream(config, "placebo");
    return econ::placebo_suite(frame, options.placebo_draws, rng);
  });
  for (auto dim : {econ::HeterogeneityDimension::Skill, econ::HeterogeneityDimension::Weather,
                   econ::HeterogeneityDimension::DayType}) {
    auto rows = econ::heterogeneity(frame, dim);
    r.heterogeneity.insert(r.heterogeneity.end(), rows.begin(), rows.end());
  }
  for (double bw : options.rdd_bandwidths) {
    econ::RddOptions o;
    o.bandwidth = bw;
    r.rdd_bandwidths.emplace_back(bw, attempt<econ::EffectEstimate>("rdd[" + format_number(bw) + "]", errors,
                                                                    [&] { return econ::rdd(frame, o); }));
  }

  CheckList checks("causal", profile);
  const double nan = std::nan("");
  std::vector<double> yen;
  for (const auto& [name, e] : r.yen_rows) {
    const auto it = errors.find(name);
    checks.within_rel("table5." + name, e ? e->effect : nan, kTargetYen, 0.15, it != errors.end() ? it->second : "");
    if (e) yen.push_back(e->effect);
  }
  checks.within_rel("table5.iv", r.iv ? r.iv->effect.effect : nan, kTargetIv, 0.30);
  double spread = nan;
  if (yen.size() == r.yen_rows.size()) {
    const auto [lo, hi] = std::minmax_element(yen.begin(), yen.end());
    spread = (*hi - *lo) / stats::mean(yen);
  }
  checks.at_most("table5.pairwise_spread", spread, 0.15, "(max - min) / mean of the yen estimates");
  checks.above("event_study.pre_trend_p", r.event_study ? r.event_study->pre_trend.p_value : nan, 0.05);
  checks.above("parallel_trends.p", r.parallel_trends ? r.parallel_trends->with_driver_fe.p_value : nan, 0.05,
               r.parallel_trends ? "driver and day FE, " + std::to_string(r.parallel_trends->weeks) + " weeks" : "");
  checks.above("iv.first_stage_f", r.iv ? r.iv->first_stage.f : nan, 10.0);
  if (r.placebo) {
    checks.flag("placebo.fake_date_draws", r.placebo->fake_date_draws >= 50,
                std::to_string(r.placebo->fake_date_draws) + " successful draws");
    checks.at_most("placebo.fake_date_significant_share", r.placebo->fake_date_significant_share, 0.10);
    auto& perm = checks.within_abs("placebo.permuted_mean_within_1se", r.placebo->permuted_mean_effect, 0.0,
                                   r.placebo->permuted_mean_se);
    perm.gating = false;
    checks.at_most("placebo.actual_p", r.placebo->actual.p_value, 0.001).gating = false;
  } else {
    checks.flag("placebo.fake_date_significant_share", false, errors["placebo"]);
  }

  // Informational.
  for (const auto& row : r.heterogeneity) {
    if (row.dimension != "skill") continue;
    checks.at_most("heterogeneity.skill." + row.subgroup + ".p", row.estimate ? row.estimate->p_value : nan, 0.05)
        .gating = false;
  }
  double rain = nan, clear = nan;
  for (const auto& row : r.heterogeneity)
    if (row.dimension == "weather" && row.estimate) (row.subgroup == "heavy_rain" ? rain : clear) = row.estimate->effect;
  auto& rc = checks.above("heterogeneity.rain_minus_clear", rain - clear, 0.0);
  rc.gating = false;
  std::vector<double> bws;
  for (const auto& [bw, e] : r.rdd_bandwidths)
    if (e) bws.push_back(e->effect);
  double bw_spread = nan;
  if (bws.size() == r.rdd_bandwidths.size() && !bws.empty()) {
    const auto [lo, hi] = std::minmax_element(bws.begin(), bws.end());
    bw_spread = (*hi - *lo) / std::fabs(r.yen_rows[3].second ? r.yen_rows[3].second->effect : nan);
  }
  checks.at_most("rdd.bandwidth_spread", bw_spread, 0.20, "bandwidths 5..15").gating = false;

  r.checks = std::move(checks.checks());
  return r;
}

std::vector<std::string> write_causal(const CausalResult& r, const std::filesystem::path& dir) {
  std::vector<std::string> files;
  auto emit = [&](const std::string& name, const std::string& text) {
    write_text_file(dir / name, text);
    files.push_back(name);
  };
  auto error_of = [&](const std::string& name) {
    const auto it = r.errors.find(name);
    return it == r.errors.end() ? std::string() : it->second;
  };
  {
    std::ostringstream o;
    write_csv_row(o, {"method", "effect", "unit", "pct_impact", "se", "t", "p_value", "ci_low", "ci_high", "n",
                      "stars", "reported_effect", "reported_pct_impact", "reported_se", "notes"});
    auto row = [&](const std::string& method, const std::string& unit,
                   const std::optional<econ::EffectEstimate>& e) {
      const ReportedRow* p = nullptr;
      for (const auto& pr : kTable5)
        if (method == pr.method) p = &pr;
      auto cells = estimate_cells(e);
      std::vector<std::string> line{method, cells[0], unit, cells[1], cells[2], cells[3], cells[4],
                                    cells[5], cells[6], cells[7]};
      line.push_back(e ? stats::significance_stars(e->p_value) : "");
      line.push_back(format_number(p->effect));
      line.push_back(format_number(p->pct));
      line.push_back(format_number(p->se));
      line.push_back(e ? e->notes : "error: " + error_of(method));
      write_csv_row(o, line);
    };
    for (const auto& [name, e] : r.yen_rows) row(name, "yen_per_min", e);
    row("iv", "yen_per_min_per_util_pt", r.iv ? std::optional(r.iv->effect) : std::nullopt);
    emit("table5.csv", o.str());
  }
  {
    std::ostringstream o;
    write_csv_row(o, {"k", "coef", "se", "t", "p_value", "ci_low", "ci_high", "n_obs", "reference", "dropped"});
    if (r.event_study) {
      const double q = 1.959963984540054;
      for (const auto& c : r.event_study->coefficients)
        write_csv_row(o, {std::to_string(c.k), format_number(c.coef), format_number(c.se), format_number(c.t),
                          format_number(c.p_value), format_number(c.reference ? 0.0 : c.coef - q * c.se),
                          format_number(c.reference ? 0.0 : c.coef + q * c.se), std::to_string(c.n_obs),
                          c.reference ? "1" : "0", c.dropped ? "1" : "0"});
    }
    emit("event_study.csv", o.str());
  }
  {
    std::ostringstream o;
    write_csv_row(o, {"test", "f", "df1", "df2", "p_value", "weeks", "n", "notes"});
    if (r.event_study) {
      const auto& w = r.event_study->pre_trend;
      write_csv_row(o, {"event_study_pre_trend", format_number(w.f), format_number(w.df1), format_number(w.df2),
                        format_number(w.p_value), "NA", "NA", "relative days -30..-2 jointly zero"});
    }
    if (r.parallel_trends) {
      const auto& pt = *r.parallel_trends;
      auto line = [&](const char* name, const econ::WaldTest& w, const char* note) {
        write_csv_row(o, {name, format_number(w.f), format_number(w.df1), format_number(w.df2),
                          format_number(w.p_value), std::to_string(pt.weeks), std::to_string(pt.n), note});
      };
      line("parallel_trends_driver_day_fe", pt.with_driver_fe, "weeks - 1 interactions, week -1 reference");
      line("parallel_trends_day_fe", pt.day_fe_only, "one interaction per week, no early-adopter main effect");
    } else {
      write_csv_row(o, {"parallel_trends", "NA", "NA", "NA", "NA", "NA", "NA", "error: " + error_of("parallel_trends")});
    }
    if (r.iv) {
      write_csv_row(o, {"iv_first_stage", format_number(r.iv->first_stage.f), format_number(r.iv->first_stage.df1),
                        format_number(r.iv->first_stage.df2), format_number(r.iv->first_stage.p_value), "NA", "NA",
                        "clustered by driver"});
      const auto& c = r.iv->first_stage_classical;
      write_csv_row(o, {"iv_first_stage_classical", format_number(c.f), format_number(c.df1), format_number(c.df2),
                        format_number(c.p_value), "NA", "NA", "homoskedastic"});
    }
    emit("parallel_trends.csv", o.str());
  }
  {
    std::ostringstream o;
    write_csv_row(o, {"kind", "draw", "effect", "se", "t", "p_value", "significant", "error"});
    if (r.placebo) {
      for (const auto& d : r.placebo->draws)
        write_csv_row(o, {d.kind, std::to_string(d.draw), format_number(d.effect), format_number(d.se),
                          format_number(d.t), format_number(d.p_value),
                          d.error.empty() ? (std::fabs(d.t) >= 1.96 ? "1" : "0") : "NA", d.error});
      const auto& a = r.placebo->actual;
      write_csv_row(o, {"actual", "0", format_number(a.effect), format_number(a.se), format_number(a.t),
                        format_number(a.p_value), std::fabs(a.t) >= 1.96 ? "1" : "0", ""});
    }
    emit("placebo.csv", o.str());
  }
  {
    std::ostringstream o;
    write_csv_row(o, {"dimension", "subgroup", "effect", "pct_impact", "se", "t", "p_value", "ci_low", "ci_high", "n",
                      "reason"});
    for (const auto& h : r.heterogeneity) {
      auto cells = estimate_cells(h.estimate);
      std::vector<std::string> line{h.dimension, h.subgroup};
      line.insert(line.end(), cells.begin(), cells.end());
      line.push_back(h.reason);
      write_csv_row(o, line);
    }
    emit("heterogeneity.csv", o.str());
  }
  {
    std::ostringstream o;
    write_csv_row(o, {"bandwidth", "effect", "pct_impact", "se", "t", "p_value", "ci_low", "ci_high", "n", "error"});
    for (const auto& [bw, e] : r.rdd_bandwidths) {
      auto cells = estimate_cells(e);
      std::vector<std::string> line{format_number(bw)};
      line.insert(line.end(), cells.begin(), cells.end());
      line.push_back(e ? "" : error_of("rdd[" + format_number(bw) + "]"));
      write_csv_row(o, line);
    }
    emit("rdd_bandwidth.csv", o.str());
  }
  return files;
}

}  // namespace wxfleet::report
