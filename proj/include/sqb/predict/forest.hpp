#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sqb/predict/folds.hpp"

namespace sqb::predict {

struct ForestParams {
  std::size_t n_trees = 100;
  std::size_t min_samples_leaf = 1;
  /// Share of features tried at each node, rounded up, at least one. Features
  /// constant within the node do not count toward it.
  double max_features = 1.0 / 3.0;
  /// 0 means unlimited.
  std::size_t max_depth = 0;
  bool bootstrap = true;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

struct TreeNode {
  /// -1 for leaves.
  int feature = -1;
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  double value = 0.0;
};

class RegressionTree {
 public:
  /// CART on the given sample (indices into X, repeats allowed). Splits
  /// maximize the reduction of squared error at midpoints between distinct
  /// feature values; x <= threshold goes left.
  static RegressionTree fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                            std::vector<std::size_t> sample, const ForestParams& params,
                            std::uint64_t seed);

  double predict(const Eigen::Ref<const Eigen::RowVectorXd>& x) const;
  const std::vector<TreeNode>& nodes() const { return nodes_; }
  std::size_t depth() const;

 private:
  std::vector<TreeNode> nodes_;
};

class RandomForest {
 public:
  RandomForest() = default;
  explicit RandomForest(std::vector<RegressionTree> trees) : trees_(std::move(trees)) {}

  Eigen::VectorXd predict(const Eigen::MatrixXd& X) const;
  const std::vector<RegressionTree>& trees() const { return trees_; }

 private:
  std::vector<RegressionTree> trees_;
};

/// Tree t draws from the substream (seed, t).
RandomForest rf_fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, const ForestParams& params);

struct RfCvResult {
  ForestParams params;
  std::vector<double> mean_r;
  RandomForest forest;
};

/// Picks the grid entry with the best mean Pearson r over the folds of `plan`
/// (an undefined r counts as -1; ties keep the earlier entry), then refits on
/// all rows.
RfCvResult rf_cv(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                 std::span<const std::string> row_groups, const FoldPlan& plan,
                 std::span<const ForestParams> grid);

}  // namespace sqb::predict
