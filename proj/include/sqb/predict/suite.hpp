#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sqb/embed/source.hpp"
#include "sqb/predict/forest.hpp"
#include "sqb/predict/lasso.hpp"
#include "sqb/predict/survey.hpp"

namespace sqb::predict {

struct BaselinePrediction {
  Eigen::VectorXd predictions;
  /// Test records whose respondent had no training response; they get the
  /// global training mean.
  std::size_t n_fallback = 0;
};

/// Each respondent's mean training response.
BaselinePrediction baseline_predict(std::span<const ResponseRecord> train,
                                    std::span<const ResponseRecord> test);

enum class ModelKind { Lasso, RandomForest };
std::string_view to_string(ModelKind kind);
ModelKind parse_model(std::string_view name);

struct PredictOptions {
  std::size_t outer_k = 10;
  std::size_t inner_k = 10;
  std::vector<ModelKind> models = {ModelKind::Lasso, ModelKind::RandomForest};
  std::vector<double> lambda_grid = logspace_grid(1e-4, 1e1, 20);
  LassoOptions lasso;
  std::vector<std::size_t> rf_n_trees = {100};
  std::vector<std::size_t> rf_min_samples_leaf = {1, 5, 20};
  double rf_max_features = 1.0 / 3.0;
  std::size_t rf_max_depth = 0;
  unsigned threads = 0;
};

struct PredictRow {
  std::string representation;
  std::string model;
  double r_mean = 0.0;
  double r_pooled = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  double delta_pct = 0.0;
  std::size_t n_test = 0;
  std::uint64_t seed = 0;
  /// Semicolon-separated notes: respondent fallbacks, cell failures.
  std::string flags;
};

/// Outer grouped k-fold over questions; for each training side an inner
/// grouped k-fold picks hyperparameters. The baseline row comes first and
/// delta_pct is relative to its r_mean. A failing cell yields NaN values and
/// the error in `flags`.
std::vector<PredictRow> run_predictive_suite(const SurveyData& data,
                                             std::span<const embed::SourcePtr> sources,
                                             std::uint64_t seed, const PredictOptions& options = {});

std::string predict_report_csv(std::span<const PredictRow> rows);

}  // namespace sqb::predict
