#include "wxfleet/econometrics/iv.hpp"

#include <cstdio>

#include "wxfleet/error.hpp"

namespace wxfleet::econometrics {

IvResult two_stage_least_squares(const IvInput& in) {
  const auto n = in.y.size();
  const auto p = in.endogenous.cols();
  const auto q = in.instruments.cols();
  if (in.endogenous.rows() != n || in.instruments.rows() != n || (in.exogenous.cols() > 0 && in.exogenous.rows() != n))
    throw ValidationError("y", "row counts differ");
  if (p == 0) throw ValidationError("endogenous", "at least one endogenous regressor required");
  if (q < p) throw ValidationError("instruments", "under-identified: fewer instruments than endogenous regressors");
  if (static_cast<Eigen::Index>(in.endogenous_names.size()) != p ||
      static_cast<Eigen::Index>(in.instrument_names.size()) != q ||
      static_cast<Eigen::Index>(in.exogenous_names.size()) != in.exogenous.cols())
    throw ValidationError("names", "one name per column required");

  IvResult out;
  const bool has_fe = !in.fixed_effects.empty();
  const Eigen::Index kx = in.exogenous.cols();

  // First stages on the original data.
  RegressionInput fs;
  fs.X.resize(n, q + kx);
  fs.X << in.instruments, in.exogenous;
  fs.names = in.instrument_names;
  fs.names.insert(fs.names.end(), in.exogenous_names.begin(), in.exogenous_names.end());
  fs.fixed_effects = in.fixed_effects;
  fs.clusters = in.clusters;
  fs.add_intercept = in.add_intercept;
  for (Eigen::Index j = 0; j < p; ++j) {
    fs.y = in.endogenous.col(j);
    fs.covariance = in.covariance;
    out.first_stages.push_back(ols(fs));
    out.first_stage_f.push_back(out.first_stages.back().wald(in.instrument_names));
    fs.covariance = CovarianceType::Classical;
    out.first_stage_f_classical.push_back(ols(fs).wald(in.instrument_names));
  }

  // Second stage on the within-transformed data.
  const bool intercept = !has_fe && in.add_intercept;
  const Eigen::Index kw = kx + (intercept ? 1 : 0);
  Eigen::MatrixXd W(n, kw);
  if (intercept) W.col(0).setOnes();
  W.rightCols(kx) = in.exogenous;
  Eigen::MatrixXd all(n, 1 + p + q + kw);
  all << in.y, in.endogenous, in.instruments, W;
  int absorbed = 0;
  if (has_fe) {
    all = absorb(all, in.fixed_effects);
    absorbed = absorbed_degrees_of_freedom(in.fixed_effects);
  }
  const Eigen::VectorXd y = all.col(0);
  Eigen::MatrixXd A(n, p + kw), Z(n, q + kw);
  A << all.middleCols(1, p), all.rightCols(kw);
  Z << all.middleCols(1 + p, q), all.rightCols(kw);

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> zqr(Z);
  if (zqr.rank() < Z.cols()) throw EstimationError("2sls: instruments and exogenous regressors are collinear");
  const Eigen::MatrixXd Xhat = Z * zqr.solve(A);
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> xqr(Xhat);
  if (xqr.rank() < Xhat.cols()) throw EstimationError("2sls: second-stage design is rank deficient");

  auto& r = out.second_stage;
  r.names = in.endogenous_names;
  if (intercept) r.names.push_back("(intercept)");
  r.names.insert(r.names.end(), in.exogenous_names.begin(), in.exogenous_names.end());
  r.n = static_cast<std::size_t>(n);
  r.k = static_cast<int>(A.cols());
  r.absorbed_df = absorbed;
  r.df_resid = static_cast<double>(n) - r.k - absorbed;
  if (r.df_resid <= 0) throw EstimationError("2sls: no residual degrees of freedom");
  r.covariance = in.covariance;
  r.coef = xqr.solve(y);
  r.residuals = y - A * r.coef;
  const double tss = intercept ? (y.array() - y.mean()).matrix().squaredNorm() : y.squaredNorm();
  r.r_squared = tss > 0 ? 1.0 - r.residuals.squaredNorm() / tss : 0.0;
  const Eigen::MatrixXd bread = (Xhat.transpose() * Xhat).ldlt().solve(Eigen::MatrixXd::Identity(A.cols(), A.cols()));
  fill_inference(r, Xhat, bread, in.clusters);
  return out;
}

IvEstimate iv_2sls(const Frame& rollout, const std::string& outcome) {
  const auto n = static_cast<Eigen::Index>(rollout.rows());
  const auto& util = rollout.at("utilization");
  const auto& rain = rollout.at("heavy_rain");
  const auto& treated = rollout.at("treated");
  IvInput in;
  in.y = Eigen::Map<const Eigen::VectorXd>(rollout.at(outcome).data(), n);
  in.endogenous.resize(n, 1);
  in.instruments.resize(n, 1);
  for (Eigen::Index i = 0; i < n; ++i) {
    in.endogenous(i, 0) = 100.0 * util[static_cast<std::size_t>(i)];
    in.instruments(i, 0) = rain[static_cast<std::size_t>(i)] * treated[static_cast<std::size_t>(i)];
  }
  in.endogenous_names = {"utilization_pct"};
  in.instrument_names = {"heavy_rain_x_treated"};
  in.exogenous_names = {"heavy_rain", "treated"};
  in.exogenous_names.insert(in.exogenous_names.end(), kWeatherCovariates.begin(), kWeatherCovariates.end());
  in.exogenous.resize(n, static_cast<Eigen::Index>(in.exogenous_names.size()));
  for (std::size_t j = 0; j < in.exogenous_names.size(); ++j)
    in.exogenous.col(static_cast<Eigen::Index>(j)) =
        Eigen::Map<const Eigen::VectorXd>(rollout.at(in.exogenous_names[j]).data(), n);
  in.fixed_effects = {as_ids(rollout.at("driver_id")), as_ids(rollout.at("day"))};
  in.clusters = as_ids(rollout.at("driver_id"));

  const auto r = two_stage_least_squares(in);
  IvEstimate out;
  out.effect = estimate_from(r.second_stage, "utilization_pct", "iv");
  out.first_stage = r.first_stage_f.front();
  out.first_stage_classical = r.first_stage_f_classical.front();
  out.weak = out.first_stage.f < 10.0;
  char buf[128];
  std::snprintf(buf, sizeof buf, "per utilization point; first-stage F %.1f (classical %.1f)%s", out.first_stage.f,
                out.first_stage_classical.f, out.weak ? "; weak instrument" : "");
  out.effect.notes = buf;
  return out;
}

}  // namespace wxfleet::econometrics
