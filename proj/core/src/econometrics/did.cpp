#include "wxfleet/econometrics/did.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "wxfleet/error.hpp"

namespace wxfleet::econometrics {

namespace {

std::map<int, double> implementation_days(const Frame& rollout) {
  const auto& id = rollout.at("driver_id");
  const auto& impl = rollout.at("implement_day");
  std::map<int, double> out;
  for (std::size_t i = 0; i < rollout.rows(); ++i) {
    if (!std::isfinite(impl[i])) throw ValidationError("implement_day", "missing; a rollout panel is required");
    const auto [it, inserted] = out.emplace(static_cast<int>(id[i]), impl[i]);
    if (!inserted && it->second != impl[i])
      throw ValidationError("implement_day", "varies within driver " + std::to_string(it->first));
  }
  if (out.empty()) throw ValidationError("rollout", "empty panel");
  return out;
}

}  // namespace

EffectEstimate did_2x2(const Frame& frame, const std::string& group, const std::string& post, const DidOptions& opt) {
  const auto& g = frame.at(group);
  const auto& p = frame.at(post);
  Frame f = frame;
  std::vector<double> gp(frame.rows());
  for (std::size_t i = 0; i < gp.size(); ++i) gp[i] = g[i] * p[i];
  const std::string inter = group + "_x_" + post;
  f.set(inter, gp);

  RegressionSpec spec;
  spec.outcome = opt.outcome;
  spec.covariates = opt.covariates;
  spec.covariance = opt.covariance;
  if (opt.covariance == CovarianceType::CR1) spec.cluster = opt.cluster;
  if (opt.fixed_effects) {
    spec.driver_fe = spec.time_fe = true;
    spec.regressors = {inter};
  } else {
    spec.regressors = {group, post, inter};
  }
  const auto r = ols(f, spec);
  auto e = estimate_from(r, inter, "did");
  e.baseline = untreated_mean(f, opt.outcome, inter);
  finish_estimate(e);
  return e;
}

double median_implementation_day(const Frame& rollout) {
  std::vector<double> days;
  for (const auto& [_, d] : implementation_days(rollout)) days.push_back(d);
  std::sort(days.begin(), days.end());
  const std::size_t m = days.size() / 2;
  return days.size() % 2 ? days[m] : 0.5 * (days[m - 1] + days[m]);
}

Frame did_sample(const Frame& rollout) {
  const double median = median_implementation_day(rollout);
  const auto& impl = rollout.at("implement_day");
  const auto& day = rollout.at("day");
  const std::size_t n = rollout.rows();
  std::vector<double> early(n), post(n);
  bool any_early = false, any_late = false;
  for (std::size_t i = 0; i < n; ++i) {
    early[i] = impl[i] < median ? 1.0 : 0.0;
    post[i] = day[i] >= median ? 1.0 : 0.0;
    (early[i] == 1.0 ? any_early : any_late) = true;
  }
  if (!any_early || !any_late) throw ValidationError("implement_day", "early and late adopter groups must both be non-empty");
  Frame f = rollout;
  f.set("early_adopter", early);
  f.set("post", post);
  return f.filter([&](std::size_t i) {
    if (early[i] == 1.0) return !(day[i] >= impl[i] && day[i] < median);
    return day[i] < impl[i];
  });
}

EffectEstimate did(const Frame& rollout, const DidOptions& opt) {
  const Frame f = did_sample(rollout);
  auto e = did_2x2(f, "early_adopter", "post", opt);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", median_implementation_day(rollout));
  e.notes = std::string("early adopters x days from ") + buf + (opt.fixed_effects ? "; driver and day fixed effects" : "");
  return e;
}

ParallelTrendsResult parallel_trends_test(const Frame& rollout, int max_weeks, const std::string& outcome) {
  const auto days = implementation_days(rollout);
  double first = days.begin()->second;
  for (const auto& [_, d] : days) first = std::min(first, d);
  const int anchor = static_cast<int>(first);
  const int weeks = std::min(max_weeks, (anchor - 1) / 7);
  if (weeks < 2)
    throw ValidationError("pre_period", "need at least 2 full pre-adoption weeks, found " + std::to_string(weeks));
  const double median = median_implementation_day(rollout);

  const auto& day = rollout.at("day");
  Frame f = rollout.filter([&](std::size_t i) { return day[i] < anchor && day[i] >= anchor - 7 * weeks; });
  const auto& fd = f.at("day");
  const auto& impl = f.at("implement_day");
  std::vector<std::string> all, but_first;
  for (int w = 1; w <= weeks; ++w) {
    std::vector<double> v(f.rows());
    for (std::size_t i = 0; i < v.size(); ++i) {
      const int week = (anchor - static_cast<int>(fd[i]) + 6) / 7;
      v[i] = (week == w && impl[i] < median) ? 1.0 : 0.0;
    }
    const auto name = "early_x_week[-" + std::to_string(w) + "]";
    f.set(name, std::move(v));
    all.push_back(name);
    if (w > 1) but_first.push_back(name);
  }

  ParallelTrendsResult out;
  out.weeks = weeks;
  out.anchor_day = anchor;
  out.n = f.rows();
  RegressionSpec spec;
  spec.outcome = outcome;
  spec.covariates = kWeatherCovariates;
  spec.cluster = "driver_id";
  spec.driver_fe = spec.time_fe = true;
  spec.regressors = but_first;
  out.with_driver_fe = ols(f, spec).wald(but_first);
  spec.driver_fe = false;
  spec.regressors = all;
  out.day_fe_only = ols(f, spec).wald(all);
  return out;
}

}  // namespace wxfleet::econometrics
