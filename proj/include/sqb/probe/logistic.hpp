#pragma once

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace sqb::probe {

struct TrainOptions {
  double l2 = 1e-4;
  double lr = 0.5;
  int max_iter = 5000;
  double tol = 1e-7;
  bool record_trace = false;
};

struct TrainingLog {
  int iterations = 0;
  double final_loss = 0.0;
  bool converged = false;
  std::vector<double> loss_trace;
};

/// Softmax classifier. Row k of `weights` scores categories[k].
struct MultinomialModel {
  Eigen::MatrixXd weights;
  Eigen::VectorXd bias;
  std::vector<std::string> categories;
  double l2 = 0.0;
  TrainingLog training_log;

  Eigen::VectorXd probabilities(const Eigen::VectorXd& x) const;
  std::size_t predict_index(const Eigen::VectorXd& x) const;
  const std::string& predict(const Eigen::VectorXd& x) const;
};

/// Row-wise softmax with the max subtracted first.
Eigen::MatrixXd softmax_rows(const Eigen::MatrixXd& logits);

/// Mean cross-entropy + (l2/2)||W||^2 and its gradient. `targets` holds
/// category indices. The bias is not penalized.
double softmax_loss_and_gradient(const Eigen::MatrixXd& X, std::span<const int> targets,
                                 const Eigen::MatrixXd& W, const Eigen::VectorXd& b, double l2,
                                 Eigen::MatrixXd* grad_W, Eigen::VectorXd* grad_b);

MultinomialModel train_probe(const Eigen::MatrixXd& X, std::span<const std::string> y,
                             const TrainOptions& options = {});

/// Fraction of rows whose argmax category equals the label. Labels the model
/// never saw count as wrong.
double evaluate_probe(const MultinomialModel& model, const Eigen::MatrixXd& X,
                      std::span<const std::string> y);

/// Accuracy of predicting the most frequent training label everywhere; ties
/// go to the lexicographically first label.
double majority_baseline(std::span<const std::string> train_labels,
                         std::span<const std::string> test_labels);

}  // namespace sqb::probe
