#include "sqb/predict/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sqb/common/error.hpp"

namespace sqb::predict {

namespace {

std::optional<double> correlation(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  if (a.size() != b.size() || a.size() < 2) return std::nullopt;
  Eigen::ArrayXd da = a.array() - a.mean();
  Eigen::ArrayXd db = b.array() - b.mean();
  double saa = (da * da).sum(), sbb = (db * db).sum();
  if (!(saa > 0.0) || !(sbb > 0.0)) return std::nullopt;
  return std::clamp((da * db).sum() / std::sqrt(saa * sbb), -1.0, 1.0);
}

}  // namespace

std::optional<double> try_pearson(const Eigen::VectorXd& pred, const Eigen::VectorXd& obs) {
  return correlation(pred, obs);
}

double delta_pct(double r, double baseline_r) { return 100.0 * (r - baseline_r) / baseline_r; }

PearsonResult pearson_r(const Eigen::VectorXd& pred, const Eigen::VectorXd& obs,
                        std::optional<double> baseline_r) {
  if (pred.size() != obs.size()) fail(ErrorCode::BadInput, "pearson_r: length mismatch");
  if (pred.size() < 3) fail(ErrorCode::BadInput, "pearson_r needs at least 3 pairs");
  if (!pred.allFinite() || !obs.allFinite()) fail(ErrorCode::BadInput, "pearson_r: non-finite value");
  auto r = correlation(pred, obs);
  if (!r) {
    fail(ErrorCode::ConstantPrediction,
         std::string("pearson_r: ") + (pred.maxCoeff() == pred.minCoeff() ? "predictions" : "observations") +
             " are constant");
  }
  PearsonResult out;
  out.r = *r;
  out.n = static_cast<std::size_t>(pred.size());
  if (out.n > 3) {
    const double z = std::atanh(std::clamp(out.r, -1.0 + 1e-16, 1.0 - 1e-16));
    const double half = 1.96 / std::sqrt(static_cast<double>(out.n) - 3.0);
    out.ci_low = std::min(std::tanh(z - half), out.r);
    out.ci_high = std::max(std::tanh(z + half), out.r);
  } else {
    out.ci_low = -1.0;
    out.ci_high = 1.0;
  }
  out.delta_pct = baseline_r ? delta_pct(out.r, *baseline_r) : std::numeric_limits<double>::quiet_NaN();
  return out;
}

}  // namespace sqb::predict
