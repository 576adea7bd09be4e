#include "wxfleet/econometrics/effect.hpp"

#include <cmath>

#include "wxfleet/special.hpp"

namespace wxfleet::econometrics {

void finish_estimate(EffectEstimate& e) {
  if (!(e.se > 0.0) || !(e.df > 0.0)) {
    e.t = e.p_value = e.ci_low = e.ci_high = std::nan("");
    return;
  }
  e.t = e.effect / e.se;
  e.p_value = special::student_t_two_sided_p(e.t, e.df);
  const double q = special::student_t_quantile(0.975, e.df);
  e.ci_low = e.effect - q * e.se;
  e.ci_high = e.effect + q * e.se;
  e.pct_impact = e.baseline != 0.0 ? e.effect / e.baseline * 100.0 : std::nan("");
}

EffectEstimate estimate_from(const RegressionResult& r, const std::string& name, std::string method) {
  EffectEstimate e;
  e.method = std::move(method);
  e.effect = r.coef_of(name);
  e.se = r.se_of(name);
  e.df = r.inference_df;
  e.n = r.n;
  finish_estimate(e);
  return e;
}

double untreated_mean(const Frame& frame, const std::string& outcome, const std::string& treatment) {
  const auto& y = frame.at(outcome);
  const auto& d = frame.at(treatment);
  double s = 0.0, n = 0.0;
  for (std::size_t i = 0; i < frame.rows(); ++i)
    if (d[i] == 0.0) {
      s += y[i];
      n += 1.0;
    }
  return n > 0 ? s / n : std::nan("");
}

}  // namespace wxfleet::econometrics
