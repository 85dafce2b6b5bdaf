#pragma once

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sqb/predict/folds.hpp"

namespace sqb::predict {

/// Column mean and population standard deviation from a training block.
/// Constant columns get scale 1.
struct Standardizer {
  Eigen::RowVectorXd mean;
  Eigen::RowVectorXd scale;

  static Standardizer fit(const Eigen::MatrixXd& X);
  Eigen::MatrixXd apply(const Eigen::MatrixXd& X) const;
};

struct LassoOptions {
  double tol = 1e-7;
  int max_sweeps = 100000;
  bool record_objective = false;
};

struct LassoModel {
  double lambda = 0.0;
  double intercept = 0.0;
  Eigen::VectorXd beta;
  int sweeps = 0;
  bool converged = false;
  std::vector<double> objective_trace;

  Eigen::VectorXd predict(const Eigen::MatrixXd& X) const;
};

/// Minimizes (1/2n)||y - X b - b0||^2 + lambda ||b||_1 by cyclic coordinate
/// descent on centered data; b0 is unpenalized. Stops when the largest
/// coefficient change in a sweep is below tol.
LassoModel lasso_fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, double lambda,
                     const LassoOptions& options = {}, const Eigen::VectorXd* warm_start = nullptr);

/// Smallest lambda at which every coefficient is zero: max |X^T (y - mean y)| / n.
double lasso_lambda_max(const Eigen::MatrixXd& X, const Eigen::VectorXd& y);

/// n values from lo to hi evenly spaced in log10, returned descending.
std::vector<double> logspace_grid(double lo, double hi, std::size_t n);

struct LassoCvResult {
  double lambda = 0.0;
  /// Mean inner-fold Pearson r per grid entry (grid order as given).
  std::vector<double> mean_r;
  Standardizer scaler;
  LassoModel model;

  Eigen::VectorXd predict(const Eigen::MatrixXd& X) const;
};

/// Chooses lambda by mean Pearson r over the folds of `plan` (an undefined r
/// counts as -1), then refits on all rows. Every fold and the final fit
/// standardize with their own training rows.
LassoCvResult lasso_cv(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                       std::span<const std::string> row_groups, const FoldPlan& plan,
                       std::span<const double> lambda_grid, const LassoOptions& options = {});

/// Rows of X selected by index.
Eigen::MatrixXd take_rows(const Eigen::MatrixXd& X, std::span<const std::size_t> rows);
Eigen::VectorXd take_rows(const Eigen::VectorXd& y, std::span<const std::size_t> rows);

}  // namespace sqb::predict
