#include "sqb/common/special.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "sqb/common/error.hpp"

namespace sqb {
namespace {

constexpr double kEps = 1e-15;
constexpr int kMaxIter = 1000;

// P(a, x) by its power series.
double lower_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  for (int n = 1; n < kMaxIter; ++n) {
    term *= x / (a + n);
    sum += term;
    if (std::abs(term) < std::abs(sum) * kEps) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Q(a, x) by the modified Lentz continued fraction.
double upper_fraction(double a, double x) {
  constexpr double tiny = std::numeric_limits<double>::min() / kEps;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIter; ++i) {
    double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEps) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double regularized_gamma_q(double a, double x) {
  if (!(a > 0.0) || !(x >= 0.0)) {
    fail(ErrorCode::BadInput,
         "regularized_gamma_q domain: a=" + std::to_string(a) + " x=" + std::to_string(x));
  }
  if (x == 0.0) return 1.0;
  double q = x < a + 1.0 ? 1.0 - lower_series(a, x) : upper_fraction(a, x);
  if (q < 0.0) return 0.0;
  if (q > 1.0) return 1.0;
  return q;
}

double chi_square_sf(double statistic, double df) {
  return regularized_gamma_q(df / 2.0, statistic / 2.0);
}

}  // namespace sqb
