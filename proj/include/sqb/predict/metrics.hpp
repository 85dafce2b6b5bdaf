#pragma once

#include <optional>

#include <Eigen/Dense>

namespace sqb::predict {

struct PearsonResult {
  double r = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::size_t n = 0;
  /// 100 (r - baseline) / baseline; NaN without a baseline.
  double delta_pct = 0.0;
};

/// Sample Pearson correlation. 95% CI by Fisher z, z +- 1.96/sqrt(n-3).
/// Throws ConstantPrediction if either vector is constant, BadInput if the
/// lengths differ or n < 3.
PearsonResult pearson_r(const Eigen::VectorXd& pred, const Eigen::VectorXd& obs,
                        std::optional<double> baseline_r = std::nullopt);

/// The correlation alone, or nullopt when it is undefined.
std::optional<double> try_pearson(const Eigen::VectorXd& pred, const Eigen::VectorXd& obs);

double delta_pct(double r, double baseline_r);

}  // namespace sqb::predict
