#include "wxfleet/econometrics/event_study.hpp"

#include <algorithm>
#include <cmath>

#include "wxfleet/error.hpp"

namespace wxfleet::econometrics {

namespace {

std::string dummy_name(int k) { return "rel_day[" + std::to_string(k) + "]"; }

}  // namespace

EventStudyResult event_study(const Frame& rollout, const EventStudyOptions& opt) {
  if (opt.window < 1) throw ValidationError("window", "must be >= 1");
  if (opt.reference < -opt.window || opt.reference > opt.window)
    throw ValidationError("reference", "outside the event window");
  const auto& rel = rollout.at("relative_day");
  const std::size_t n = rollout.rows();
  const int W = opt.window;

  std::vector<int> binned(n);
  std::vector<std::size_t> counts(static_cast<std::size_t>(2 * W + 1), 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(rel[i])) throw ValidationError("relative_day", "event study needs a rollout panel");
    binned[i] = std::clamp(static_cast<int>(rel[i]), -W, W);
    ++counts[static_cast<std::size_t>(binned[i] + W)];
  }

  Frame f = rollout;
  RegressionSpec spec;
  spec.outcome = opt.outcome;
  spec.covariates = opt.covariates;
  spec.driver_fe = spec.time_fe = true;
  spec.cluster = "driver_id";

  EventStudyResult out;
  for (int k = -W; k <= W; ++k) {
    EventCoefficient c;
    c.k = k;
    c.n_obs = counts[static_cast<std::size_t>(k + W)];
    c.reference = k == opt.reference;
    if (!c.reference && c.n_obs == 0) {
      c.dropped = true;
      c.coef = c.se = c.t = c.p_value = std::nan("");
      out.notes.push_back("relative day " + std::to_string(k) + " has no observations; dropped");
    } else if (!c.reference) {
      std::vector<double> d(n, 0.0);
      for (std::size_t i = 0; i < n; ++i) d[i] = binned[i] == k ? 1.0 : 0.0;
      f.set(dummy_name(k), std::move(d));
      spec.regressors.push_back(dummy_name(k));
    } else {
      c.t = c.p_value = std::nan("");
    }
    out.coefficients.push_back(c);
  }

  const auto r = ols(f, spec);
  std::vector<std::string> pre, post;
  for (auto& c : out.coefficients) {
    if (c.reference || c.dropped) continue;
    const auto name = dummy_name(c.k);
    c.coef = r.coef_of(name);
    c.se = r.se_of(name);
    c.t = r.t_of(name);
    c.p_value = r.p_of(name);
    if (c.k < opt.reference) pre.push_back(name);
    if (c.k >= 0) post.push_back(name);
  }
  if (pre.empty()) throw EstimationError("event study: no pre-period coefficients to test");
  if (post.empty()) throw EstimationError("event study: no post-period coefficients");
  out.pre_trend = r.wald(pre);

  Eigen::VectorXd a = Eigen::VectorXd::Zero(r.k);
  for (const auto& name : post) a(static_cast<Eigen::Index>(r.index(name))) = 1.0 / static_cast<double>(post.size());
  auto& e = out.post_average;
  e.method = "event_study";
  e.effect = a.dot(r.coef);
  e.se = std::sqrt(std::max(0.0, a.dot(r.vcov * a)));
  e.df = r.inference_df;
  e.n = r.n;
  e.baseline = untreated_mean(rollout, opt.outcome);
  e.notes = "mean of relative days 0.." + std::to_string(W) + "; reference " + std::to_string(opt.reference);
  finish_estimate(e);
  return out;
}

EffectEstimate before_after(const Frame& rollout, const std::string& outcome) {
  RegressionSpec spec;
  spec.outcome = outcome;
  spec.regressors = {"treated"};
  spec.cluster = "driver_id";
  const auto r = ols(rollout, spec);
  auto e = estimate_from(r, "treated", "before_after");
  e.baseline = untreated_mean(rollout, outcome);
  e.notes = "treated minus untreated driver-day means";
  finish_estimate(e);
  return e;
}

}  // namespace wxfleet::econometrics
