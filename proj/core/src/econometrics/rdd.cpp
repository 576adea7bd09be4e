#include "wxfleet/econometrics/rdd.hpp"

#include <cmath>
#include <cstdio>

#include "wxfleet/error.hpp"

namespace wxfleet::econometrics {

EffectEstimate local_polynomial_jump(const Frame& frame, const RddOptions& opt) {
  if (!(opt.bandwidth >= 2.0)) throw ValidationError("bandwidth", "must be at least 2 on each side");
  if (opt.order != 1 && opt.order != 2) throw ValidationError("order", "must be 1 or 2");
  const auto& run = frame.at(opt.running);
  Frame f = frame.filter([&](std::size_t i) { return std::fabs(run[i] - opt.cutoff) <= opt.bandwidth; });

  const auto& x0 = f.at(opt.running);
  const std::size_t n = f.rows();
  std::vector<double> jump(n);
  std::vector<std::vector<double>> powers(static_cast<std::size_t>(2 * opt.order), std::vector<double>(n));
  std::size_t left = 0, right = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = x0[i] - opt.cutoff;
    jump[i] = x >= 0.0 ? 1.0 : 0.0;
    (x >= 0.0 ? right : left) += 1;
    for (int p = 1; p <= opt.order; ++p) {
      powers[static_cast<std::size_t>(2 * (p - 1))][i] = std::pow(x, p);
      powers[static_cast<std::size_t>(2 * (p - 1) + 1)][i] = jump[i] * std::pow(x, p);
    }
  }
  const auto need = static_cast<std::size_t>(opt.order + 2);
  if (left < need || right < need)
    throw EstimationError("rdd: too few observations in the window (" + std::to_string(left) + " below, " +
                          std::to_string(right) + " above the cutoff)");

  RegressionSpec spec;
  spec.outcome = opt.outcome;
  spec.regressors = {"jump"};
  f.set("jump", jump);
  for (int p = 1; p <= opt.order; ++p) {
    const auto s = std::to_string(p);
    f.set("run^" + s, std::move(powers[static_cast<std::size_t>(2 * (p - 1))]));
    f.set("jump*run^" + s, std::move(powers[static_cast<std::size_t>(2 * (p - 1) + 1)]));
    spec.regressors.push_back("run^" + s);
    spec.regressors.push_back("jump*run^" + s);
  }
  spec.covariates = opt.covariates;
  spec.driver_fe = opt.driver_fe;
  spec.time_fe = opt.time_fe;
  spec.covariance = opt.covariance;
  if (opt.covariance == CovarianceType::CR1) spec.cluster = opt.cluster;

  const auto r = ols(f, spec);
  auto e = estimate_from(r, "jump", "rdd");
  e.baseline = untreated_mean(f, opt.outcome, "jump");
  char buf[96];
  std::snprintf(buf, sizeof buf, "uniform kernel, bandwidth %g, order %d", opt.bandwidth, opt.order);
  e.notes = buf;
  finish_estimate(e);
  return e;
}

}  // namespace wxfleet::econometrics
