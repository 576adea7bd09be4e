#include "wxfleet/econometrics/robustness.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "wxfleet/error.hpp"

namespace wxfleet::econometrics {

namespace {

std::map<int, double> driver_days(const Frame& rollout) {
  const auto& id = rollout.at("driver_id");
  const auto& impl = rollout.at("implement_day");
  std::map<int, double> out;
  for (std::size_t i = 0; i < rollout.rows(); ++i) out.emplace(static_cast<int>(id[i]), impl[i]);
  return out;
}

Frame with_days(const Frame& rollout, const std::map<int, double>& days) {
  Frame f = rollout;
  const auto& id = rollout.at("driver_id");
  std::vector<double> impl(rollout.rows());
  for (std::size_t i = 0; i < impl.size(); ++i) impl[i] = days.at(static_cast<int>(id[i]));
  f.set("implement_day", std::move(impl));
  return f;
}

PlaceboDraw run_draw(const Frame& f, std::string kind, int draw, const DidOptions& opt) {
  PlaceboDraw d;
  d.kind = std::move(kind);
  d.draw = draw;
  try {
    const auto e = did(f, opt);
    d.effect = e.effect;
    d.se = e.se;
    d.t = e.t;
    d.p_value = e.p_value;
  } catch (const Error& err) {
    d.error = err.what();
    d.effect = d.se = d.t = d.p_value = std::nan("");
  }
  return d;
}

}  // namespace

PlaceboReport placebo_suite(const Frame& rollout, int n_draws, Rng& rng, const DidOptions& opt) {
  if (n_draws < 20) throw ValidationError("n_draws", "at least 20 placebo draws required");
  PlaceboReport out;
  out.actual = did(rollout, opt);

  const auto days = driver_days(rollout);
  double first = INFINITY;
  for (const auto& [_, d] : days) first = std::min(first, d);
  const int pre_len = static_cast<int>(first) - 1;
  if (pre_len < 6) throw ValidationError("pre_period", "too short for fake implementation dates");
  const auto& day = rollout.at("day");
  const Frame pre = rollout.filter([&](std::size_t i) { return day[i] < first; });
  const int lo = pre_len / 3 + 1;
  const int hi = pre_len - pre_len / 3;

  int fake_sig = 0;
  for (int k = 0; k < n_draws; ++k) {
    auto fake = days;
    for (auto& [_, d] : fake) d = static_cast<double>(rng.uniform_int(lo, hi));
    auto d = run_draw(with_days(pre, fake), "fake_date", k + 1, opt);
    if (d.error.empty()) {
      ++out.fake_date_draws;
      fake_sig += std::fabs(d.t) >= 1.96;
    }
    out.draws.push_back(std::move(d));
  }

  std::vector<double> pool;
  for (const auto& [_, d] : days) pool.push_back(d);
  int perm_sig = 0;
  double sum_effect = 0.0, sum_se = 0.0;
  for (int k = 0; k < n_draws; ++k) {
    for (std::size_t i = pool.size(); i > 1; --i)
      std::swap(pool[i - 1], pool[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(i) - 1))]);
    auto perm = days;
    std::size_t j = 0;
    for (auto& [_, d] : perm) d = pool[j++];
    auto d = run_draw(with_days(rollout, perm), "permuted", k + 1, opt);
    if (d.error.empty()) {
      ++out.permuted_draws;
      perm_sig += std::fabs(d.t) >= 1.96;
      sum_effect += d.effect;
      sum_se += d.se;
    }
    out.draws.push_back(std::move(d));
  }
  out.fake_date_significant_share = out.fake_date_draws ? static_cast<double>(fake_sig) / out.fake_date_draws : std::nan("");
  out.permuted_significant_share = out.permuted_draws ? static_cast<double>(perm_sig) / out.permuted_draws : std::nan("");
  out.permuted_mean_effect = out.permuted_draws ? sum_effect / out.permuted_draws : std::nan("");
  out.permuted_mean_se = out.permuted_draws ? sum_se / out.permuted_draws : std::nan("");
  return out;
}

std::string_view to_string(HeterogeneityDimension dimension) {
  switch (dimension) {
    case HeterogeneityDimension::Skill: return "skill";
    case HeterogeneityDimension::Weather: return "weather";
    case HeterogeneityDimension::DayType: return "daytype";
  }
  return "?";
}

std::vector<HeterogeneityRow> heterogeneity(const Frame& rollout, HeterogeneityDimension dimension,
                                            const DidOptions& opt) {
  std::vector<std::pair<std::string, std::function<bool(std::size_t)>>> groups;
  switch (dimension) {
    case HeterogeneityDimension::Skill: {
      const auto& s = rollout.at("skill");
      groups = {{"low", [&](std::size_t i) { return s[i] == 0.0; }},
                {"medium", [&](std::size_t i) { return s[i] == 1.0; }},
                {"high", [&](std::size_t i) { return s[i] == 2.0; }}};
      break;
    }
    case HeterogeneityDimension::Weather: {
      const auto& r = rollout.at("heavy_rain");
      groups = {{"heavy_rain", [&](std::size_t i) { return r[i] == 1.0; }},
                {"clear", [&](std::size_t i) { return r[i] == 0.0; }}};
      break;
    }
    case HeterogeneityDimension::DayType: {
      const auto& w = rollout.at("weekend");
      groups = {{"weekday", [&](std::size_t i) { return w[i] == 0.0; }},
                {"weekend", [&](std::size_t i) { return w[i] == 1.0; }}};
      break;
    }
  }
  std::vector<HeterogeneityRow> out;
  for (const auto& [name, keep] : groups) {
    HeterogeneityRow row;
    row.dimension = to_string(dimension);
    row.subgroup = name;
    const Frame f = rollout.filter(keep);
    if (f.rows() == 0) {
      row.reason = "empty subgroup";
    } else {
      // a subgroup can pin a covariate (no heavy hours on clear days)
      DidOptions sub = opt;
      std::erase_if(sub.covariates, [&](const std::string& c) {
        const auto& v = f.at(c);
        return std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); });
      });
      try {
        auto e = did(f, sub);
        e.method = "did[" + row.dimension + "=" + name + "]";
        row.estimate = e;
      } catch (const Error& err) {
        row.reason = err.what();
      }
    }
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace wxfleet::econometrics
