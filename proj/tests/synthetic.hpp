#pragma once

// Small staggered-adoption panels with a known additive effect, built
// without the simulator so estimator tests have ground truth.

#include <cmath>
#include <random>
#include <vector>

#include "wxfleet/econometrics/frame.hpp"
#include "wxfleet/econometrics/effect.hpp"

namespace synthetic {

struct PanelSpec {
  int drivers = 40;
  int days = 60;
  int first_adoption = 20;
  int last_adoption = 40;
  double effect = 5.0;
  double noise_sd = 1.0;
  double pre_trend_slope = 0.0;  ///< per day, early adopters only, before adoption
  std::uint64_t seed = 1;
};

inline wxfleet::econometrics::Frame staggered_panel(const PanelSpec& s) {
  std::mt19937_64 g(s.seed);
  std::normal_distribution<double> z;
  std::uniform_int_distribution<int> adopt(s.first_adoption, s.last_adoption);
  std::uniform_int_distribution<int> skill(0, 2);
  std::uniform_real_distribution<double> u(0.0, 1.0);

  std::vector<double> driver_effect(static_cast<std::size_t>(s.drivers)), impl(driver_effect.size()),
      sk(driver_effect.size()), exp(driver_effect.size());
  for (std::size_t i = 0; i < driver_effect.size(); ++i) {
    driver_effect[i] = 10.0 * z(g);
    impl[i] = adopt(g);
    sk[i] = skill(g);
    exp[i] = 1.0 + 19.0 * u(g);
  }
  std::vector<double> day_effect(static_cast<std::size_t>(s.days) + 1);
  for (auto& d : day_effect) d = 3.0 * z(g);
  const double mid = 0.5 * (s.first_adoption + s.last_adoption);

  const std::size_t n = static_cast<std::size_t>(s.drivers * s.days);
  std::vector<double> id(n), day(n), im(n), rel(n), tr(n), y(n), rain(n), heavy(n), hshare(n), temp(n), vis(n),
      wind(n), wk(n), skc(n), ex(n), util(n);
  std::size_t r = 0;
  for (int i = 0; i < s.drivers; ++i) {
    const auto ii = static_cast<std::size_t>(i);
    for (int t = 1; t <= s.days; ++t, ++r) {
      id[r] = i + 1;
      day[r] = t;
      im[r] = impl[ii];
      rel[r] = t - impl[ii];
      tr[r] = t >= impl[ii];
      heavy[r] = u(g) < 0.2;
      hshare[r] = heavy[r] * (0.1 + 0.4 * u(g));
      rain[r] = 5.0 * hshare[r] + 0.3 * u(g);
      temp[r] = u(g) < 0.1 ? 0.1 * std::floor(1 + 3 * u(g)) : 0.0;
      vis[r] = u(g) < 0.1 ? 0.2 : 0.0;
      wind[r] = u(g) < 0.05 ? 0.1 : 0.0;
      wk[r] = (t - 1) % 7 >= 5;
      skc[r] = sk[ii];
      ex[r] = exp[ii] + (t - 1) / 365.0;
      const bool early = impl[ii] < mid;
      const double trend = early && !tr[r] ? s.pre_trend_slope * t : 0.0;
      y[r] = 50.0 + driver_effect[ii] + day_effect[static_cast<std::size_t>(t)] + s.effect * tr[r] + 4.0 * rain[r] +
             trend + s.noise_sd * z(g);
      util[r] = 50.0 + 5.0 * heavy[r] + s.noise_sd * z(g);
    }
  }
  wxfleet::econometrics::Frame f(n);
  f.set("driver_id", id);
  f.set("day", day);
  f.set("implement_day", im);
  f.set("relative_day", rel);
  f.set("treated", tr);
  f.set("revenue_per_min", y);
  f.set("utilization", util);
  f.set("rain_mm", rain);
  f.set("heavy_rain", heavy);
  f.set("heavy_rain_share", hshare);
  f.set("extreme_temp_share", temp);
  f.set("low_visibility_share", vis);
  f.set("high_wind_share", wind);
  f.set("weekend", wk);
  f.set("skill", skc);
  f.set("experience_years", ex);
  return f;
}

inline wxfleet::econometrics::Frame scaled(wxfleet::econometrics::Frame f, const std::string& column, double c) {
  auto v = f.at(column);
  for (auto& x : v) x *= c;
  f.set(column, v);
  return f;
}

}  // namespace synthetic
