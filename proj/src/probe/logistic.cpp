#include "sqb/probe/logistic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "sqb/common/error.hpp"

namespace sqb::probe {

Eigen::MatrixXd softmax_rows(const Eigen::MatrixXd& logits) {
  Eigen::MatrixXd p(logits.rows(), logits.cols());
  for (Eigen::Index i = 0; i < logits.rows(); ++i) {
    double m = logits.row(i).maxCoeff();
    p.row(i) = (logits.row(i).array() - m).exp();
    p.row(i) /= p.row(i).sum();
  }
  return p;
}

Eigen::VectorXd MultinomialModel::probabilities(const Eigen::VectorXd& x) const {
  Eigen::MatrixXd logits = (weights * x + bias).transpose();
  return softmax_rows(logits).row(0).transpose();
}

std::size_t MultinomialModel::predict_index(const Eigen::VectorXd& x) const {
  Eigen::VectorXd scores = weights * x + bias;
  std::size_t best = 0;
  for (Eigen::Index k = 1; k < scores.size(); ++k) {
    if (scores[k] > scores[static_cast<Eigen::Index>(best)]) best = static_cast<std::size_t>(k);
  }
  return best;
}

const std::string& MultinomialModel::predict(const Eigen::VectorXd& x) const {
  return categories[predict_index(x)];
}

double softmax_loss_and_gradient(const Eigen::MatrixXd& X, std::span<const int> targets,
                                 const Eigen::MatrixXd& W, const Eigen::VectorXd& b, double l2,
                                 Eigen::MatrixXd* grad_W, Eigen::VectorXd* grad_b) {
  const Eigen::Index n = X.rows();
  if (n == 0 || static_cast<std::size_t>(n) != targets.size()) {
    fail(ErrorCode::InternalInvariantViolation, "softmax loss: row/label count mismatch");
  }
  Eigen::MatrixXd logits = X * W.transpose();
  logits.rowwise() += b.transpose();

  double loss = 0.0;
  Eigen::MatrixXd delta(n, W.rows());
  for (Eigen::Index i = 0; i < n; ++i) {
    double m = logits.row(i).maxCoeff();
    Eigen::RowVectorXd e = (logits.row(i).array() - m).exp();
    double z = e.sum();
    loss += std::log(z) + m - logits(i, targets[static_cast<std::size_t>(i)]);
    delta.row(i) = e / z;
    delta(i, targets[static_cast<std::size_t>(i)]) -= 1.0;
  }
  loss = loss / static_cast<double>(n) + 0.5 * l2 * W.squaredNorm();
  if (grad_W) *grad_W = delta.transpose() * X / static_cast<double>(n) + l2 * W;
  if (grad_b) *grad_b = delta.colwise().sum().transpose() / static_cast<double>(n);
  return loss;
}

MultinomialModel train_probe(const Eigen::MatrixXd& X, std::span<const std::string> y,
                             const TrainOptions& options) {
  if (static_cast<std::size_t>(X.rows()) != y.size()) {
    fail(ErrorCode::BadInput, "train_probe: row/label count mismatch");
  }
  if (!X.allFinite()) fail(ErrorCode::BadInput, "train_probe: non-finite feature value");
  if (options.l2 < 0 || options.lr <= 0 || options.max_iter < 0 || options.tol < 0) {
    fail(ErrorCode::ConfigError, "train_probe: invalid optimizer settings");
  }

  std::set<std::string> cats(y.begin(), y.end());
  if (cats.size() < 2) {
    fail(ErrorCode::DegenerateLabels, "probe training needs at least 2 categories, got " +
                                          std::to_string(cats.size()));
  }
  MultinomialModel model;
  model.categories.assign(cats.begin(), cats.end());
  model.l2 = options.l2;
  std::map<std::string, int> index;
  for (std::size_t k = 0; k < model.categories.size(); ++k) {
    index.emplace(model.categories[k], static_cast<int>(k));
  }
  std::vector<int> targets;
  targets.reserve(y.size());
  for (const auto& label : y) targets.push_back(index.at(label));

  const auto K = static_cast<Eigen::Index>(cats.size());
  Eigen::MatrixXd W = Eigen::MatrixXd::Zero(K, X.cols());
  Eigen::VectorXd b = Eigen::VectorXd::Zero(K);
  Eigen::MatrixXd gW;
  Eigen::VectorXd gb;
  double loss = softmax_loss_and_gradient(X, targets, W, b, options.l2, &gW, &gb);
  if (!std::isfinite(loss)) fail(ErrorCode::DivergedTraining, "initial loss is not finite");

  TrainingLog& log = model.training_log;
  if (options.record_trace) log.loss_trace.push_back(loss);
  double step = options.lr;
  constexpr double kMinStep = 1e-12;
  while (log.iterations < options.max_iter) {
    ++log.iterations;
    double trial_step = std::min(options.lr, 2.0 * step);
    bool accepted = false;
    Eigen::MatrixXd W_new, gW_new;
    Eigen::VectorXd b_new, gb_new;
    double trial = loss;
    bool any_finite = false;
    // Proximal step on the penalty term.
    const Eigen::MatrixXd g_data = gW - options.l2 * W;
    while (trial_step >= kMinStep) {
      W_new = (W - trial_step * g_data) / (1.0 + trial_step * options.l2);
      b_new = b - trial_step * gb;
      trial = softmax_loss_and_gradient(X, targets, W_new, b_new, options.l2, &gW_new, &gb_new);
      any_finite = any_finite || std::isfinite(trial);
      if (std::isfinite(trial) && trial <= loss) {
        accepted = true;
        break;
      }
      trial_step *= 0.5;
    }
    if (!accepted) {
      if (!any_finite) {
        fail(ErrorCode::DivergedTraining,
             "no finite loss along the descent direction at iteration " +
                 std::to_string(log.iterations));
      }
      log.converged = true;
      break;
    }
    step = trial_step;
    double improvement = loss - trial;
    W = std::move(W_new);
    b = std::move(b_new);
    gW = std::move(gW_new);
    gb = std::move(gb_new);
    loss = trial;
    if (options.record_trace) log.loss_trace.push_back(loss);
    if (improvement < options.tol) {
      log.converged = true;
      break;
    }
  }
  log.final_loss = loss;
  model.weights = std::move(W);
  model.bias = std::move(b);
  return model;
}

double evaluate_probe(const MultinomialModel& model, const Eigen::MatrixXd& X,
                      std::span<const std::string> y) {
  if (y.empty()) fail(ErrorCode::EmptySplit, "evaluate_probe: empty test set");
  if (static_cast<std::size_t>(X.rows()) != y.size()) {
    fail(ErrorCode::BadInput, "evaluate_probe: row/label count mismatch");
  }
  std::size_t correct = 0;
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    if (model.predict(X.row(i).transpose()) == y[static_cast<std::size_t>(i)]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(y.size());
}

double majority_baseline(std::span<const std::string> train_labels,
                         std::span<const std::string> test_labels) {
  if (train_labels.empty() || test_labels.empty()) {
    fail(ErrorCode::EmptySplit, "majority_baseline: empty train or test labels");
  }
  std::map<std::string, std::size_t> counts;
  for (const auto& l : train_labels) ++counts[l];
  auto best = counts.begin();
  for (auto it = counts.begin(); it != counts.end(); ++it) {
    if (it->second > best->second) best = it;
  }
  auto hits = std::count(test_labels.begin(), test_labels.end(), best->first);
  return static_cast<double>(hits) / static_cast<double>(test_labels.size());
}

}  // namespace sqb::probe
