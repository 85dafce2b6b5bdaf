#include "sqb/predict/lasso.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sqb/common/error.hpp"
#include "sqb/predict/metrics.hpp"

namespace sqb::predict {

Standardizer Standardizer::fit(const Eigen::MatrixXd& X) {
  Standardizer s;
  const auto n = static_cast<double>(X.rows());
  if (X.rows() == 0) fail(ErrorCode::EmptySplit, "cannot standardize an empty block");
  s.mean = X.colwise().mean();
  s.scale.resize(X.cols());
  for (Eigen::Index j = 0; j < X.cols(); ++j) {
    double var = (X.col(j).array() - s.mean[j]).square().sum() / n;
    double sd = std::sqrt(var);
    s.scale[j] = sd > 1e-12 * std::max(1.0, std::abs(s.mean[j])) ? sd : 1.0;
  }
  return s;
}

Eigen::MatrixXd Standardizer::apply(const Eigen::MatrixXd& X) const {
  return (X.rowwise() - mean).array().rowwise() / scale.array();
}

Eigen::VectorXd LassoModel::predict(const Eigen::MatrixXd& X) const {
  return (X * beta).array() + intercept;
}

namespace {

double soft_threshold(double z, double lambda) {
  if (z > lambda) return z - lambda;
  if (z < -lambda) return z + lambda;
  return 0.0;
}

// |X_c^T (y - mean y)| / n per column.
Eigen::VectorXd null_gradient(const Eigen::MatrixXd& Xc, const Eigen::VectorXd& y) {
  const Eigen::VectorXd yc = y.array() - y.mean();
  Eigen::VectorXd g(Xc.cols());
  for (Eigen::Index j = 0; j < Xc.cols(); ++j) {
    g[j] = std::abs(Xc.col(j).dot(yc)) / static_cast<double>(Xc.rows());
  }
  return g;
}

}  // namespace

LassoModel lasso_fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, double lambda,
                     const LassoOptions& options, const Eigen::VectorXd* warm_start) {
  if (X.rows() != y.size()) fail(ErrorCode::BadInput, "lasso: row count mismatch");
  if (X.rows() == 0) fail(ErrorCode::EmptySplit, "lasso: no rows");
  if (!X.allFinite() || !y.allFinite()) fail(ErrorCode::BadInput, "lasso: non-finite input");
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    fail(ErrorCode::ConfigError, "lasso: lambda must be a finite value >= 0");
  }
  const auto n = static_cast<double>(X.rows());
  const Eigen::RowVectorXd x_mean = X.colwise().mean();
  const double y_mean = y.mean();
  const Eigen::MatrixXd Xc = X.rowwise() - x_mean;
  const Eigen::VectorXd col_sq = Xc.colwise().squaredNorm().transpose() / n;

  LassoModel m;
  m.lambda = lambda;
  m.beta = Eigen::VectorXd::Zero(X.cols());
  if (warm_start) {
    if (warm_start->size() != X.cols()) fail(ErrorCode::BadInput, "lasso: warm start size");
    m.beta = *warm_start;
  }
  for (Eigen::Index j = 0; j < X.cols(); ++j) {
    if (col_sq[j] == 0.0) m.beta[j] = 0.0;
  }
  if (X.cols() == 0 || lambda >= null_gradient(Xc, y).maxCoeff()) {
    m.beta.setZero();
    m.converged = true;
    m.intercept = y_mean;
    if (options.record_objective) {
      m.objective_trace.push_back(0.5 * (y.array() - y_mean).matrix().squaredNorm() / n);
    }
    return m;
  }
  Eigen::VectorXd r = (y.array() - y_mean).matrix() - Xc * m.beta;
  auto objective = [&] { return 0.5 * r.squaredNorm() / n + lambda * m.beta.lpNorm<1>(); };
  if (options.record_objective) m.objective_trace.push_back(objective());

  while (m.sweeps < options.max_sweeps) {
    ++m.sweeps;
    double max_change = 0.0;
    for (Eigen::Index j = 0; j < X.cols(); ++j) {
      if (col_sq[j] == 0.0) continue;
      const double old = m.beta[j];
      const double z = Xc.col(j).dot(r) / n + col_sq[j] * old;
      const double updated = soft_threshold(z, lambda) / col_sq[j];
      if (updated != old) {
        r -= (updated - old) * Xc.col(j);
        m.beta[j] = updated;
        max_change = std::max(max_change, std::abs(updated - old));
      }
    }
    if (options.record_objective) m.objective_trace.push_back(objective());
    if (max_change < options.tol) {
      m.converged = true;
      break;
    }
  }
  m.intercept = y_mean - x_mean.dot(m.beta);
  return m;
}

double lasso_lambda_max(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
  if (X.rows() == 0 || X.cols() == 0) return 0.0;
  const Eigen::MatrixXd Xc = X.rowwise() - X.colwise().mean();
  return null_gradient(Xc, y).maxCoeff();
}

std::vector<double> logspace_grid(double lo, double hi, std::size_t n) {
  if (n == 0 || !(lo > 0.0) || !(hi >= lo)) {
    fail(ErrorCode::ConfigError, "lambda grid needs n >= 1 and 0 < lo <= hi");
  }
  std::vector<double> grid(n);
  const double a = std::log10(lo), b = std::log10(hi);
  for (std::size_t i = 0; i < n; ++i) {
    double t = n == 1 ? 1.0 : static_cast<double>(i) / static_cast<double>(n - 1);
    grid[n - 1 - i] = std::pow(10.0, a + t * (b - a));
  }
  return grid;
}

Eigen::VectorXd LassoCvResult::predict(const Eigen::MatrixXd& X) const {
  return model.predict(scaler.apply(X));
}

Eigen::MatrixXd take_rows(const Eigen::MatrixXd& X, std::span<const std::size_t> rows) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), X.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out.row(static_cast<Eigen::Index>(i)) = X.row(static_cast<Eigen::Index>(rows[i]));
  }
  return out;
}

Eigen::VectorXd take_rows(const Eigen::VectorXd& y, std::span<const std::size_t> rows) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out[static_cast<Eigen::Index>(i)] = y[static_cast<Eigen::Index>(rows[i])];
  }
  return out;
}

LassoCvResult lasso_cv(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                       std::span<const std::string> row_groups, const FoldPlan& plan,
                       std::span<const double> lambda_grid, const LassoOptions& options) {
  if (lambda_grid.empty()) fail(ErrorCode::ConfigError, "lasso: empty lambda grid");
  // Warm starts run from large to small lambda.
  std::vector<std::size_t> order(lambda_grid.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return lambda_grid[a] > lambda_grid[b]; });

  LassoCvResult result;
  result.mean_r.assign(lambda_grid.size(), 0.0);
  for (std::size_t f = 0; f < plan.k; ++f) {
    auto rows = fold_rows(plan, row_groups, f);
    if (rows.train.empty() || rows.test.empty()) continue;
    auto scaler = Standardizer::fit(take_rows(X, rows.train));
    Eigen::MatrixXd X_train = scaler.apply(take_rows(X, rows.train));
    Eigen::MatrixXd X_test = scaler.apply(take_rows(X, rows.test));
    Eigen::VectorXd y_train = take_rows(y, rows.train);
    Eigen::VectorXd y_test = take_rows(y, rows.test);
    Eigen::VectorXd warm = Eigen::VectorXd::Zero(X.cols());
    for (auto g : order) {
      auto m = lasso_fit(X_train, y_train, lambda_grid[g], options, &warm);
      warm = m.beta;
      auto r = try_pearson(m.predict(X_test), y_test);
      result.mean_r[g] += (r ? *r : -1.0) / static_cast<double>(plan.k);
    }
  }
  std::size_t best = 0;
  for (std::size_t g = 1; g < lambda_grid.size(); ++g) {
    if (result.mean_r[g] > result.mean_r[best]) best = g;
  }
  result.lambda = lambda_grid[best];
  result.scaler = Standardizer::fit(X);
  result.model = lasso_fit(result.scaler.apply(X), y, result.lambda, options);
  return result;
}

}  // namespace sqb::predict
