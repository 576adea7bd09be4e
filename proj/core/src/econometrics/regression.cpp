#include "wxfleet/econometrics/regression.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include "wxfleet/error.hpp"
#include "wxfleet/special.hpp"

namespace wxfleet::econometrics {

namespace {

// Dense 0..L-1 relabelling of arbitrary group ids.
std::vector<int> densify(const std::vector<int>& ids, int& levels) {
  std::unordered_map<int, int> map;
  std::vector<int> out(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    auto [it, inserted] = map.emplace(ids[i], static_cast<int>(map.size()));
    out[i] = it->second;
  }
  levels = static_cast<int>(map.size());
  return out;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

Eigen::MatrixXd absorb(const Eigen::MatrixXd& M, const std::vector<std::vector<int>>& fixed_effects) {
  Eigen::MatrixXd out = M;
  if (fixed_effects.empty() || M.size() == 0) return out;
  const auto n = M.rows();
  std::vector<std::vector<int>> groups;
  std::vector<int> levels;
  for (const auto& fe : fixed_effects) {
    if (static_cast<Eigen::Index>(fe.size()) != n) throw ValidationError("fixed_effects", "length differs from data");
    int l = 0;
    groups.push_back(densify(fe, l));
    levels.push_back(l);
  }
  std::vector<Eigen::VectorXd> counts;
  for (std::size_t f = 0; f < groups.size(); ++f) {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(levels[f]);
    for (Eigen::Index i = 0; i < n; ++i) c(groups[f][i]) += 1.0;
    counts.push_back(c);
  }
  const double scale = std::max(1.0, M.cwiseAbs().maxCoeff());
  const int max_iter = groups.size() == 1 ? 1 : 100000;
  for (int iter = 0; iter < max_iter; ++iter) {
    double change = 0.0;
    for (std::size_t f = 0; f < groups.size(); ++f) {
      Eigen::MatrixXd means = Eigen::MatrixXd::Zero(levels[f], M.cols());
      for (Eigen::Index i = 0; i < n; ++i) means.row(groups[f][i]) += out.row(i);
      for (Eigen::Index g = 0; g < levels[f]; ++g) means.row(g) /= counts[f](g);
      for (Eigen::Index i = 0; i < n; ++i) out.row(i) -= means.row(groups[f][i]);
      change = std::max(change, means.cwiseAbs().maxCoeff());
    }
    if (change < 1e-13 * scale) break;
    if (iter == max_iter - 1 && groups.size() > 1) throw EstimationError("fixed-effect absorption did not converge");
  }
  return out;
}

int absorbed_degrees_of_freedom(const std::vector<std::vector<int>>& fixed_effects) {
  if (fixed_effects.empty()) return 0;
  std::vector<std::vector<int>> groups;
  std::vector<int> levels;
  for (const auto& fe : fixed_effects) {
    int l = 0;
    groups.push_back(densify(fe, l));
    levels.push_back(l);
  }
  int total = std::accumulate(levels.begin(), levels.end(), 0);
  if (groups.size() == 1) return total;
  if (groups.size() == 2) {
    UnionFind uf(levels[0] + levels[1]);
    for (std::size_t i = 0; i < groups[0].size(); ++i) uf.unite(groups[0][i], levels[0] + groups[1][i]);
    int components = 0;
    for (int v = 0; v < levels[0] + levels[1]; ++v) components += uf.find(v) == v;
    return total - components;
  }
  return total - static_cast<int>(groups.size()) + 1;
}

std::size_t RegressionResult::index(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return i;
  throw ValidationError(name, "not a coefficient of this regression");
}

WaldTest RegressionResult::wald(const std::vector<std::string>& which) const {
  if (which.empty()) throw ValidationError("wald", "no coefficients to test");
  const auto q = static_cast<Eigen::Index>(which.size());
  Eigen::VectorXd b(q);
  Eigen::MatrixXd V(q, q);
  std::vector<Eigen::Index> idx;
  for (const auto& n : which) idx.push_back(static_cast<Eigen::Index>(index(n)));
  for (Eigen::Index i = 0; i < q; ++i) {
    b(i) = coef(idx[i]);
    for (Eigen::Index j = 0; j < q; ++j) V(i, j) = vcov(idx[i], idx[j]);
  }
  Eigen::LDLT<Eigen::MatrixXd> ldlt(V);
  WaldTest w;
  w.df1 = static_cast<double>(q);
  w.df2 = inference_df;
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive())
    throw EstimationError("wald: covariance of tested coefficients is not positive definite");
  w.f = b.dot(ldlt.solve(b)) / w.df1;
  w.p_value = special::f_upper_p(w.f, w.df1, w.df2);
  return w;
}

void fill_inference(RegressionResult& r, const Eigen::MatrixXd& X, const Eigen::MatrixXd& bread,
                    const std::vector<int>& clusters) {
  const auto n = X.rows();
  const auto k = X.cols();
  const double k_total = static_cast<double>(k) + r.absorbed_df;
  const double nd = static_cast<double>(n);
  switch (r.covariance) {
    case CovarianceType::Classical: {
      const double s2 = r.residuals.squaredNorm() / r.df_resid;
      r.vcov = s2 * bread;
      r.inference_df = r.df_resid;
      break;
    }
    case CovarianceType::HC1: {
      const Eigen::MatrixXd meat = X.transpose() * r.residuals.array().square().matrix().asDiagonal() * X;
      r.vcov = bread * meat * bread * (nd / (nd - k_total));
      r.inference_df = r.df_resid;
      break;
    }
    case CovarianceType::CR1: {
      if (static_cast<Eigen::Index>(clusters.size()) != n)
        throw ValidationError("clusters", "one cluster id per row required for CR1");
      int g_count = 0;
      const auto g = densify(clusters, g_count);
      if (g_count < 2) throw EstimationError("clustered covariance needs at least 2 clusters");
      Eigen::MatrixXd scores = Eigen::MatrixXd::Zero(g_count, k);
      for (Eigen::Index i = 0; i < n; ++i) scores.row(g[i]) += r.residuals(i) * X.row(i);
      const Eigen::MatrixXd meat = scores.transpose() * scores;
      const double G = g_count;
      r.vcov = bread * meat * bread * (G / (G - 1.0) * (nd - 1.0) / (nd - k_total));
      r.n_clusters = g_count;
      r.inference_df = G - 1.0;
      break;
    }
  }
  r.se = r.vcov.diagonal().cwiseMax(0.0).cwiseSqrt();
  r.t = r.coef.cwiseQuotient(r.se);
  r.p.resize(k);
  for (Eigen::Index j = 0; j < k; ++j)
    r.p(j) = r.se(j) > 0 ? special::student_t_two_sided_p(r.t(j), r.inference_df) : std::nan("");
}

RegressionResult ols(const RegressionInput& in) {
  const auto n = in.y.size();
  if (in.X.rows() != n) throw ValidationError("X", "row count differs from y");
  if (static_cast<Eigen::Index>(in.names.size()) != in.X.cols())
    throw ValidationError("names", "one name per regressor required");

  const bool has_fe = !in.fixed_effects.empty();
  Eigen::MatrixXd X;
  std::vector<std::string> names;
  if (!has_fe && in.add_intercept) {
    X.resize(n, in.X.cols() + 1);
    X.col(0).setOnes();
    X.rightCols(in.X.cols()) = in.X;
    names.push_back("(intercept)");
  } else {
    X = in.X;
  }
  names.insert(names.end(), in.names.begin(), in.names.end());

  Eigen::VectorXd y = in.y;
  int absorbed = 0;
  if (has_fe) {
    Eigen::MatrixXd joined(n, X.cols() + 1);
    joined.col(0) = y;
    joined.rightCols(X.cols()) = X;
    joined = absorb(joined, in.fixed_effects);
    y = joined.col(0);
    X = joined.rightCols(X.cols());
    absorbed = absorbed_degrees_of_freedom(in.fixed_effects);
  }
  const auto k = X.cols();
  if (k == 0) throw ValidationError("X", "no regressors");

  // Column scaling keeps the rank threshold meaningful for mixed units.
  Eigen::VectorXd norms = X.colwise().norm().transpose();
  for (Eigen::Index j = 0; j < k; ++j) {
    if (norms(j) <= 1e-12 * std::max(1.0, in.X.size() ? in.X.cwiseAbs().maxCoeff() : 1.0))
      throw EstimationError("rank deficient design: column '" + names[j] + "' is absorbed or constant zero");
  }
  const Eigen::MatrixXd Xs = X * norms.cwiseInverse().asDiagonal();
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(Xs);
  qr.setThreshold(1e-10);
  if (qr.rank() < k) {
    std::string cols;
    const auto& perm = qr.colsPermutation().indices();
    for (Eigen::Index j = qr.rank(); j < k; ++j) {
      if (!cols.empty()) cols += ", ";
      cols += "'" + names[perm(j)] + "'";
    }
    throw EstimationError("rank deficient design: collinear column(s) " + cols);
  }
  const double df_resid = static_cast<double>(n) - static_cast<double>(k) - absorbed;
  if (df_resid <= 0) throw EstimationError("no residual degrees of freedom");

  RegressionResult r;
  r.names = names;
  r.n = static_cast<std::size_t>(n);
  r.k = static_cast<int>(k);
  r.absorbed_df = absorbed;
  r.df_resid = df_resid;
  r.covariance = in.covariance;
  r.coef = qr.solve(y).cwiseQuotient(norms);
  r.residuals = y - X * r.coef;

  const double tss = has_fe || !in.add_intercept ? y.squaredNorm() : (y.array() - y.mean()).matrix().squaredNorm();
  r.r_squared = tss > 0 ? 1.0 - r.residuals.squaredNorm() / tss : 0.0;

  // (X'X)^-1 through the scaled QR factor.
  const Eigen::MatrixXd R = qr.matrixR().topLeftCorner(k, k).template triangularView<Eigen::Upper>();
  const Eigen::MatrixXd Rinv = R.template triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(k, k));
  Eigen::MatrixXd bread_s = Rinv * Rinv.transpose();
  const Eigen::MatrixXd P = qr.colsPermutation();
  bread_s = P * bread_s * P.transpose();
  const Eigen::MatrixXd bread = norms.cwiseInverse().asDiagonal() * bread_s * norms.cwiseInverse().asDiagonal();

  fill_inference(r, X, bread, in.clusters);
  return r;
}

RegressionResult ols(const Frame& frame, const RegressionSpec& spec) {
  RegressionInput in;
  const auto& y = frame.at(spec.outcome);
  const auto n = static_cast<Eigen::Index>(frame.rows());
  in.y = Eigen::Map<const Eigen::VectorXd>(y.data(), n);
  std::vector<std::string> cols = spec.regressors;
  cols.insert(cols.end(), spec.covariates.begin(), spec.covariates.end());
  in.X.resize(n, static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    const auto& c = frame.at(cols[j]);
    in.X.col(static_cast<Eigen::Index>(j)) = Eigen::Map<const Eigen::VectorXd>(c.data(), n);
  }
  in.names = cols;
  if (spec.driver_fe) in.fixed_effects.push_back(as_ids(frame.at("driver_id")));
  if (spec.time_fe) in.fixed_effects.push_back(as_ids(frame.at("day")));
  in.covariance = spec.covariance;
  if (spec.covariance == CovarianceType::CR1) {
    if (spec.cluster.empty()) throw ValidationError("cluster", "CR1 covariance requires a cluster column");
    in.clusters = as_ids(frame.at(spec.cluster));
  }
  return ols(in);
}

}  // namespace wxfleet::econometrics
