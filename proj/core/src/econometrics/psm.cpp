#include "wxfleet/econometrics/psm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "wxfleet/error.hpp"

namespace wxfleet::econometrics {

namespace {

double logistic(double eta) { return eta >= 0 ? 1.0 / (1.0 + std::exp(-eta)) : std::exp(eta) / (1.0 + std::exp(eta)); }

bool separates(const Eigen::VectorXd& eta, const Eigen::VectorXd& d) {
  double min1 = INFINITY, max1 = -INFINITY, min0 = INFINITY, max0 = -INFINITY;
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    if (d(i) == 1.0) {
      min1 = std::min(min1, eta(i));
      max1 = std::max(max1, eta(i));
    } else {
      min0 = std::min(min0, eta(i));
      max0 = std::max(max0, eta(i));
    }
  }
  return min1 > max0 || min0 > max1;
}

// Controls sorted by (score, row) for nearest-neighbour lookup.
struct ControlIndex {
  std::vector<std::pair<double, std::size_t>> sorted;

  // Nearest control to `s`, ties to the lowest row; `skip` excludes one row.
  std::size_t nearest(double s, std::size_t skip = static_cast<std::size_t>(-1)) const {
    auto lowest_at = [&](double score) {
      auto it = std::lower_bound(sorted.begin(), sorted.end(), std::make_pair(score, std::size_t{0}));
      while (it != sorted.end() && it->first == score && it->second == skip) ++it;
      return it != sorted.end() && it->first == score ? it->second : skip;
    };
    auto it = std::lower_bound(sorted.begin(), sorted.end(), std::make_pair(s, std::size_t{0}));
    std::size_t best = skip;
    double best_d = INFINITY;
    auto consider = [&](std::size_t row, double score) {
      if (row == skip) return;
      const double dist = std::fabs(score - s);
      if (dist < best_d || (dist == best_d && row < best)) {
        best = row;
        best_d = dist;
      }
    };
    // Right side: first score >= s other than `skip`.
    for (auto r = it; r != sorted.end(); ++r) {
      if (r->second == skip) continue;
      consider(lowest_at(r->first), r->first);
      break;
    }
    // Left side: largest score < s.
    for (auto l = it; l != sorted.begin();) {
      --l;
      if (l->second == skip) continue;
      consider(lowest_at(l->first), l->first);
      break;
    }
    return best;
  }
};

}  // namespace

PropensityModel fit_logit(const Eigen::VectorXd& d, const Eigen::MatrixXd& X, const std::vector<std::string>& names,
                          int max_iter) {
  const auto n = d.size();
  if (X.rows() != n) throw ValidationError("X", "row count differs from treatment");
  if (static_cast<Eigen::Index>(names.size()) != X.cols()) throw ValidationError("names", "one name per covariate");
  const double n1 = d.sum();
  for (Eigen::Index i = 0; i < n; ++i)
    if (d(i) != 0.0 && d(i) != 1.0) throw ValidationError("treatment", "must be 0 or 1");
  if (n1 == 0.0 || n1 == static_cast<double>(n)) throw ValidationError("treatment", "both classes must be present");

  Eigen::MatrixXd Z(n, X.cols() + 1);
  Z.col(0).setOnes();
  Z.rightCols(X.cols()) = X;
  PropensityModel m;
  m.names.push_back("(intercept)");
  m.names.insert(m.names.end(), names.begin(), names.end());
  m.coef = Eigen::VectorXd::Zero(Z.cols());

  Eigen::VectorXd eta = Eigen::VectorXd::Zero(n);
  bool failed = false;
  for (m.iterations = 1; m.iterations <= max_iter; ++m.iterations) {
    Eigen::VectorXd p(n), w(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      p(i) = logistic(eta(i));
      w(i) = p(i) * (1.0 - p(i));
    }
    const Eigen::MatrixXd H = Z.transpose() * w.asDiagonal() * Z;
    const Eigen::VectorXd g = Z.transpose() * (d - p);
    Eigen::LDLT<Eigen::MatrixXd> ldlt(H);
    if (ldlt.info() != Eigen::Success || !ldlt.isPositive() || ldlt.rcond() < 1e-14) {
      failed = true;
      break;
    }
    const Eigen::VectorXd step = ldlt.solve(g);
    if (!step.allFinite()) {
      failed = true;
      break;
    }
    m.coef += step;
    eta = Z * m.coef;
    if (step.cwiseAbs().maxCoeff() < 1e-8) {
      m.converged = true;
      break;
    }
  }
  if (!m.converged) {
    if (separates(eta, d) || separates(Z * m.coef, d)) throw EstimationError("propensity model: perfect separation");
    if (failed) throw EstimationError("propensity model: singular information matrix");
    throw EstimationError("propensity model: no convergence in " + std::to_string(max_iter) + " iterations");
  }
  m.iterations = std::min(m.iterations, max_iter);

  m.scores.resize(static_cast<std::size_t>(n));
  double lo1 = 1, hi1 = 0, lo0 = 1, hi0 = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double s = logistic(eta(i));
    m.scores[static_cast<std::size_t>(i)] = s;
    if (d(i) == 1.0) {
      lo1 = std::min(lo1, s);
      hi1 = std::max(hi1, s);
    } else {
      lo0 = std::min(lo0, s);
      hi0 = std::max(hi0, s);
    }
  }
  m.support_low = std::max(lo1, lo0);
  m.support_high = std::min(hi1, hi0);
  return m;
}

PropensityModel fit_propensity(const Frame& frame, const std::string& treatment) {
  Frame f = frame;
  if (!f.has("skill_medium") || !f.has("skill_high")) {
    const auto& skill = f.at("skill");
    std::vector<double> med(f.rows()), high(f.rows());
    for (std::size_t i = 0; i < f.rows(); ++i) {
      med[i] = skill[i] == 1.0 ? 1.0 : 0.0;
      high[i] = skill[i] == 2.0 ? 1.0 : 0.0;
    }
    f.set("skill_medium", med);
    f.set("skill_high", high);
  }
  const auto n = static_cast<Eigen::Index>(f.rows());
  Eigen::MatrixXd X(n, static_cast<Eigen::Index>(kPropensityCovariates.size()));
  for (std::size_t j = 0; j < kPropensityCovariates.size(); ++j) {
    const auto& c = f.at(kPropensityCovariates[j]);
    X.col(static_cast<Eigen::Index>(j)) = Eigen::Map<const Eigen::VectorXd>(c.data(), n);
  }
  const auto& d = f.at(treatment);
  return fit_logit(Eigen::Map<const Eigen::VectorXd>(d.data(), n), X, kPropensityCovariates);
}

MatchResult nearest_neighbor_att(std::span<const double> score, std::span<const double> treated,
                                 std::span<const double> outcome, double support_low, double support_high) {
  if (score.size() != treated.size() || score.size() != outcome.size())
    throw ValidationError("score", "score, treatment and outcome lengths differ");
  ControlIndex controls;
  std::vector<std::size_t> treated_rows;
  MatchResult m;
  for (std::size_t i = 0; i < score.size(); ++i) {
    const bool inside = score[i] >= support_low && score[i] <= support_high;
    if (treated[i] == 1.0) {
      if (inside)
        treated_rows.push_back(i);
      else
        ++m.n_dropped;
    } else if (inside) {
      controls.sorted.emplace_back(score[i], i);
    }
  }
  if (treated_rows.empty() || controls.sorted.empty()) throw EstimationError("matching: empty common support");
  std::sort(controls.sorted.begin(), controls.sorted.end());

  std::vector<double> uses(score.size(), 0.0);
  std::vector<double> diffs;
  for (auto t : treated_rows) {
    const auto c = controls.nearest(score[t]);
    m.matches.push_back(c);
    uses[c] += 1.0;
    diffs.push_back(outcome[t] - outcome[c]);
  }
  m.n_treated = treated_rows.size();
  const double nt = static_cast<double>(m.n_treated);
  m.att = std::accumulate(diffs.begin(), diffs.end(), 0.0) / nt;

  double v = 0.0;
  for (double x : diffs) v += (x - m.att) * (x - m.att);
  for (const auto& [s, j] : controls.sorted) {
    if (uses[j] == 0.0) continue;
    ++m.n_controls_used;
    if (controls.sorted.size() < 2) continue;
    const auto other = controls.nearest(s, j);
    const double sigma2 = 0.5 * (outcome[j] - outcome[other]) * (outcome[j] - outcome[other]);
    v += (uses[j] * uses[j] - uses[j]) * sigma2;
  }
  m.se = std::sqrt(v) / nt;
  return m;
}

EffectEstimate match_att(const Frame& frame, const PropensityModel& model, const std::string& outcome,
                         const std::string& treatment) {
  if (model.scores.size() != frame.rows()) throw ValidationError("scores", "propensity model fitted on other data");
  const auto m = nearest_neighbor_att(model.scores, frame.at(treatment), frame.at(outcome), model.support_low,
                                      model.support_high);
  EffectEstimate e;
  e.method = "psm";
  e.effect = m.att;
  e.se = m.se;
  e.df = static_cast<double>(m.n_treated) - 1.0;
  e.n = m.n_treated;
  e.baseline = untreated_mean(frame, outcome, treatment);
  e.notes = "1-NN with replacement; " + std::to_string(m.n_dropped) + " treated outside common support";
  finish_estimate(e);
  return e;
}

}  // namespace wxfleet::econometrics
