#include "wxfleet/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "wxfleet/error.hpp"
#include "wxfleet/special.hpp"

namespace wxfleet::stats {

double mean(std::span<const double> x) {
  if (x.empty()) throw ValidationError("x", "empty sample");
  double s = 0.0;
  for (double v : x) s += v;
  return s / static_cast<double>(x.size());
}

double variance(std::span<const double> x) {
  if (x.size() < 2) throw ValidationError("x", "need at least 2 values");
  const double m = mean(x);
  double ss = 0.0;
  for (double v : x) ss += (v - m) * (v - m);
  return ss / static_cast<double>(x.size() - 1);
}

CorrelationEntry pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ValidationError("y", "length differs from x");
  if (x.size() < 3) throw ValidationError("x", "need at least 3 points");
  const double mx = mean(x);
  const double my = mean(y);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx <= 0.0) throw ValidationError("x", "zero variance");
  if (syy <= 0.0) throw ValidationError("y", "zero variance");
  CorrelationEntry e;
  e.n = x.size();
  e.r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  const double df = static_cast<double>(e.n) - 2.0;
  if (std::fabs(e.r) >= 1.0) {
    e.p_value = 0.0;
  } else {
    const double t = e.r * std::sqrt(df / (1.0 - e.r * e.r));
    e.p_value = special::student_t_two_sided_p(t, df);
  }
  return e;
}

TTest welch_t(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2) throw ValidationError("a", "need at least 2 values");
  if (b.size() < 2) throw ValidationError("b", "need at least 2 values");
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double va = variance(a) / na;
  const double vb = variance(b) / nb;
  TTest out;
  const double diff = mean(a) - mean(b);
  if (va + vb <= 0.0) {
    if (diff != 0.0) throw ValidationError("a", "zero variance in both samples");
    out.df = na + nb - 2.0;
    return out;
  }
  out.t = diff / std::sqrt(va + vb);
  out.df = (va + vb) * (va + vb) / (va * va / (na - 1.0) + vb * vb / (nb - 1.0));
  out.p_value = special::student_t_two_sided_p(out.t, out.df);
  return out;
}

double cohens_d(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2) throw ValidationError("a", "need at least 2 values");
  if (b.size() < 2) throw ValidationError("b", "need at least 2 values");
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double pooled = ((na - 1.0) * variance(a) + (nb - 1.0) * variance(b)) / (na + nb - 2.0);
  if (pooled <= 0.0) throw ValidationError("a", "zero pooled standard deviation");
  return (mean(a) - mean(b)) / std::sqrt(pooled);
}

std::string significance_stars(double p) {
  if (p < 0.001) return "***";
  if (p < 0.01) return "**";
  if (p < 0.05) return "*";
  return "";
}

std::vector<CorrelationEntry> correlation_matrix(const PanelDataset& panel) {
  if (panel.experiment != Experiment::CrossSectional)
    throw ValidationError("experiment", "correlation matrix requires the cross-sectional panel");
  const auto mode = panel.column("mode");
  auto demean = [&](std::vector<double> v) {
    std::map<double, std::pair<double, double>> acc;
    for (std::size_t i = 0; i < v.size(); ++i) {
      acc[mode[i]].first += v[i];
      acc[mode[i]].second += 1.0;
    }
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= acc[mode[i]].first / acc[mode[i]].second;
    return v;
  };
  std::vector<CorrelationEntry> out;
  for (const auto& w : kWeatherVariables) {
    const auto x = demean(panel.column(w));
    for (const auto& m : kPerformanceMetrics) {
      const auto y = demean(panel.column(m));
      CorrelationEntry e;
      try {
        e = pearson(x, y);
      } catch (const ValidationError& err) {
        e.error = err.what();
        e.n = x.size();
        e.r = std::nan("");
        e.p_value = std::nan("");
      }
      e.x_name = w;
      e.y_name = m;
      out.push_back(e);
    }
  }
  return out;
}

}  // namespace wxfleet::stats
