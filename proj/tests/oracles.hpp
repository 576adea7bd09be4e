#pragma once

// Reference implementations used only by tests. Each one takes the most
// direct route available (explicit normal equations, explicit dummies,
// exhaustive search) and shares no code with the library estimators.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

inline Eigen::VectorXd normal_equations(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
  const Eigen::MatrixXd xtx = X.transpose() * X;
  const Eigen::VectorXd xty = X.transpose() * y;
  return xtx.fullPivLu().solve(xty);
}

inline Eigen::MatrixXd with_intercept(const Eigen::MatrixXd& X) {
  Eigen::MatrixXd out(X.rows(), X.cols() + 1);
  out.col(0).setOnes();
  out.rightCols(X.cols()) = X;
  return out;
}

/// X followed by one dummy per level of each factor, first level of every
/// factor dropped, plus an intercept column in front.
inline Eigen::MatrixXd dummy_design(const Eigen::MatrixXd& X, const std::vector<std::vector<int>>& factors) {
  std::vector<std::vector<int>> levels;
  Eigen::Index extra = 0;
  for (const auto& f : factors) {
    std::vector<int> lv(f.begin(), f.end());
    std::sort(lv.begin(), lv.end());
    lv.erase(std::unique(lv.begin(), lv.end()), lv.end());
    extra += static_cast<Eigen::Index>(lv.size()) - 1;
    levels.push_back(std::move(lv));
  }
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(X.rows(), 1 + X.cols() + extra);
  D.col(0).setOnes();
  D.middleCols(1, X.cols()) = X;
  Eigen::Index col = 1 + X.cols();
  for (std::size_t j = 0; j < factors.size(); ++j) {
    for (std::size_t l = 1; l < levels[j].size(); ++l, ++col)
      for (Eigen::Index i = 0; i < X.rows(); ++i) D(i, col) = factors[j][static_cast<std::size_t>(i)] == levels[j][l];
  }
  return D;
}

/// Sandwich covariance with explicit cluster sums; `clusters` may be all
/// distinct for the HC form. No small-sample factor.
inline Eigen::MatrixXd sandwich(const Eigen::MatrixXd& X, const Eigen::VectorXd& e, const std::vector<int>& clusters) {
  const Eigen::MatrixXd bread = (X.transpose() * X).inverse();
  std::map<int, Eigen::VectorXd> score;
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    auto [it, fresh] = score.try_emplace(clusters[static_cast<std::size_t>(i)], Eigen::VectorXd::Zero(X.cols()));
    it->second += X.row(i).transpose() * e(i);
  }
  Eigen::MatrixXd meat = Eigen::MatrixXd::Zero(X.cols(), X.cols());
  for (const auto& [g, s] : score) meat += s * s.transpose();
  return bread * meat * bread;
}

struct Match {
  double att = 0.0;
  std::vector<std::size_t> controls;
};

/// Every treated unit against every control; first minimum wins.
inline Match brute_force_att(const std::vector<double>& score, const std::vector<double>& treated,
                             const std::vector<double>& y) {
  Match m;
  double sum = 0.0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < score.size(); ++i) {
    if (treated[i] != 1.0) continue;
    double best = std::numeric_limits<double>::infinity();
    std::size_t arg = 0;
    for (std::size_t j = 0; j < score.size(); ++j) {
      if (treated[j] != 0.0) continue;
      const double dist = std::abs(score[i] - score[j]);
      if (dist < best) {
        best = dist;
        arg = j;
      }
    }
    m.controls.push_back(arg);
    sum += y[i] - y[arg];
    ++n;
  }
  m.att = sum / static_cast<double>(n);
  return m;
}

/// Plain gradient ascent on the mean log-likelihood.
inline Eigen::VectorXd logit_gradient_ascent(const Eigen::MatrixXd& X, const Eigen::VectorXd& d, double step,
                                             int iterations) {
  Eigen::VectorXd b = Eigen::VectorXd::Zero(X.cols());
  const double n = static_cast<double>(X.rows());
  for (int it = 0; it < iterations; ++it) {
    const Eigen::VectorXd eta = X * b;
    Eigen::VectorXd p(eta.size());
    for (Eigen::Index i = 0; i < eta.size(); ++i) p(i) = 1.0 / (1.0 + std::exp(-eta(i)));
    b += step * X.transpose() * (d - p) / n;
  }
  return b;
}

/// Welch t written out term by term.
inline double welch_t(const std::vector<double>& a, const std::vector<double>& b) {
  auto mv = [](const std::vector<double>& x) {
    double m = 0.0;
    for (double v : x) m += v;
    m /= static_cast<double>(x.size());
    double s = 0.0;
    for (double v : x) s += (v - m) * (v - m);
    return std::pair{m, s / static_cast<double>(x.size() - 1)};
  };
  const auto [ma, va] = mv(a);
  const auto [mb, vb] = mv(b);
  return (ma - mb) / std::sqrt(va / static_cast<double>(a.size()) + vb / static_cast<double>(b.size()));
}

inline Eigen::MatrixXd random_matrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& g) {
  std::normal_distribution<double> z;
  Eigen::MatrixXd M(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) M(i, j) = z(g);
  return M;
}

inline double max_rel_diff(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    worst = std::max(worst, std::abs(a(i) - b(i)) / std::max(1.0, std::abs(b(i))));
  return worst;
}

}  // namespace oracle
