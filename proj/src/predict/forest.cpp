#include "sqb/predict/forest.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sqb/common/error.hpp"
#include "sqb/common/parallel.hpp"
#include "sqb/common/rng.hpp"
#include "sqb/predict/lasso.hpp"
#include "sqb/predict/metrics.hpp"

namespace sqb::predict {

namespace {

void check_params(const ForestParams& p) {
  if (p.min_samples_leaf < 1) fail(ErrorCode::ConfigError, "random forest: min_samples_leaf < 1");
  if (p.n_trees < 1) fail(ErrorCode::ConfigError, "random forest: n_trees < 1");
  if (!(p.max_features > 0.0 && p.max_features <= 1.0)) {
    fail(ErrorCode::ConfigError, "random forest: max_features must be in (0, 1]");
  }
}

struct Split {
  int feature = -1;
  double threshold = 0.0;
  double gain = -1.0;
  std::size_t n_left = 0;
};

struct Frame {
  int node;
  std::vector<std::size_t> sample;
  std::size_t depth;
};

}  // namespace

RegressionTree RegressionTree::fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                                   std::vector<std::size_t> sample, const ForestParams& params,
                                   std::uint64_t seed) {
  check_params(params);
  if (sample.empty()) fail(ErrorCode::EmptySplit, "regression tree: empty sample");
  const auto p = static_cast<std::size_t>(X.cols());
  const std::size_t n_try =
      std::clamp<std::size_t>(static_cast<std::size_t>(std::ceil(params.max_features * p - 1e-9)), 1,
                              std::max<std::size_t>(p, 1));
  Rng rng(seed);
  std::vector<std::size_t> features(p);

  RegressionTree tree;
  tree.nodes_.emplace_back();
  std::vector<Frame> stack;
  stack.push_back({0, std::move(sample), 0});
  std::vector<std::pair<double, std::size_t>> order;

  while (!stack.empty()) {
    Frame frame = std::move(stack.back());
    stack.pop_back();
    const auto& s = frame.sample;
    double sum = 0.0;
    double y_min = y[static_cast<Eigen::Index>(s[0])], y_max = y_min;
    for (auto i : s) {
      double v = y[static_cast<Eigen::Index>(i)];
      sum += v;
      y_min = std::min(y_min, v);
      y_max = std::max(y_max, v);
    }
    const double n = static_cast<double>(s.size());
    tree.nodes_[static_cast<std::size_t>(frame.node)].value = sum / n;

    const bool depth_capped = params.max_depth > 0 && frame.depth >= params.max_depth;
    if (depth_capped || y_min == y_max || s.size() < 2 * params.min_samples_leaf || p == 0) {
      continue;
    }

    // Features are drawn without replacement until n_try non-constant ones
    // have been examined or none are left.
    std::iota(features.begin(), features.end(), 0);
    Split best;
    const double base = sum * sum / n;
    for (std::size_t k = 0, tried = 0; k < p && tried < n_try; ++k) {
      auto j = k + static_cast<std::size_t>(rng.below(p - k));
      std::swap(features[k], features[j]);
      const auto f = static_cast<Eigen::Index>(features[k]);
      order.clear();
      for (auto i : s) order.emplace_back(X(static_cast<Eigen::Index>(i), f), i);
      std::sort(order.begin(), order.end());
      if (order.front().first == order.back().first) continue;
      ++tried;
      double left_sum = 0.0;
      for (std::size_t pos = 0; pos + 1 < order.size(); ++pos) {
        left_sum += y[static_cast<Eigen::Index>(order[pos].second)];
        const std::size_t n_left = pos + 1, n_right = order.size() - n_left;
        if (n_left < params.min_samples_leaf) continue;
        if (n_right < params.min_samples_leaf) break;
        const double a = order[pos].first, b = order[pos + 1].first;
        if (!(a < b)) continue;
        const double right_sum = sum - left_sum;
        const double gain = left_sum * left_sum / static_cast<double>(n_left) +
                            right_sum * right_sum / static_cast<double>(n_right) - base;
        if (gain > best.gain) {
          double mid = a + (b - a) / 2.0;
          if (!(mid < b)) mid = a;
          best = {static_cast<int>(f), mid, gain, n_left};
        }
      }
    }
    if (best.feature < 0) continue;

    std::vector<std::size_t> left, right;
    left.reserve(best.n_left);
    right.reserve(s.size() - best.n_left);
    for (auto i : s) {
      (X(static_cast<Eigen::Index>(i), best.feature) <= best.threshold ? left : right).push_back(i);
    }
    const int l = static_cast<int>(tree.nodes_.size());
    tree.nodes_.emplace_back();
    tree.nodes_.emplace_back();
    auto& node = tree.nodes_[static_cast<std::size_t>(frame.node)];
    node.feature = best.feature;
    node.threshold = best.threshold;
    node.left = l;
    node.right = l + 1;
    stack.push_back({l + 1, std::move(right), frame.depth + 1});
    stack.push_back({l, std::move(left), frame.depth + 1});
  }
  return tree;
}

double RegressionTree::predict(const Eigen::Ref<const Eigen::RowVectorXd>& x) const {
  std::size_t i = 0;
  while (nodes_[i].feature >= 0) {
    i = static_cast<std::size_t>(x[nodes_[i].feature] <= nodes_[i].threshold ? nodes_[i].left
                                                                             : nodes_[i].right);
  }
  return nodes_[i].value;
}

std::size_t RegressionTree::depth() const {
  std::vector<std::size_t> d(nodes_.size(), 0);
  std::size_t deepest = 0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    deepest = std::max(deepest, d[i]);
    if (nodes_[i].feature >= 0) {
      d[static_cast<std::size_t>(nodes_[i].left)] = d[i] + 1;
      d[static_cast<std::size_t>(nodes_[i].right)] = d[i] + 1;
    }
  }
  return deepest;
}

Eigen::VectorXd RandomForest::predict(const Eigen::MatrixXd& X) const {
  if (trees_.empty()) fail(ErrorCode::InternalInvariantViolation, "forest has no trees");
  Eigen::VectorXd out = Eigen::VectorXd::Zero(X.rows());
  for (Eigen::Index r = 0; r < X.rows(); ++r) {
    double s = 0.0;
    for (const auto& t : trees_) s += t.predict(X.row(r));
    out[r] = s / static_cast<double>(trees_.size());
  }
  return out;
}

RandomForest rf_fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, const ForestParams& params) {
  check_params(params);
  if (X.rows() != y.size()) fail(ErrorCode::BadInput, "random forest: row count mismatch");
  if (X.rows() == 0) fail(ErrorCode::EmptySplit, "random forest: no rows");
  if (!X.allFinite() || !y.allFinite()) fail(ErrorCode::BadInput, "random forest: non-finite input");
  const auto n = static_cast<std::size_t>(X.rows());
  std::vector<RegressionTree> trees(params.n_trees);
  parallel_for(
      params.n_trees,
      [&](std::size_t t) {
        Rng rng(substream(params.seed, static_cast<std::uint64_t>(t)));
        std::vector<std::size_t> sample(n);
        if (params.bootstrap) {
          for (auto& i : sample) i = static_cast<std::size_t>(rng.below(n));
        } else {
          std::iota(sample.begin(), sample.end(), 0);
        }
        trees[t] = RegressionTree::fit(X, y, std::move(sample), params, rng.next_u64());
      },
      params.threads);
  return RandomForest(std::move(trees));
}

RfCvResult rf_cv(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                 std::span<const std::string> row_groups, const FoldPlan& plan,
                 std::span<const ForestParams> grid) {
  if (grid.empty()) fail(ErrorCode::ConfigError, "random forest: empty parameter grid");
  for (const auto& p : grid) check_params(p);
  RfCvResult result;
  result.mean_r.assign(grid.size(), 0.0);
  for (std::size_t f = 0; f < plan.k; ++f) {
    auto rows = fold_rows(plan, row_groups, f);
    if (rows.train.empty() || rows.test.empty()) continue;
    auto X_train = take_rows(X, rows.train);
    auto y_train = take_rows(y, rows.train);
    auto X_test = take_rows(X, rows.test);
    auto y_test = take_rows(y, rows.test);
    for (std::size_t g = 0; g < grid.size(); ++g) {
      auto forest = rf_fit(X_train, y_train, grid[g]);
      auto r = try_pearson(forest.predict(X_test), y_test);
      result.mean_r[g] += (r ? *r : -1.0) / static_cast<double>(plan.k);
    }
  }
  std::size_t best = 0;
  for (std::size_t g = 1; g < grid.size(); ++g) {
    if (result.mean_r[g] > result.mean_r[best]) best = g;
  }
  result.params = grid[best];
  result.forest = rf_fit(X, y, result.params);
  return result;
}

}  // namespace sqb::predict
