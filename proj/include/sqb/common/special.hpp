#pragma once

namespace sqb {

/// Regularized upper incomplete gamma Q(a, x) = Γ(a, x) / Γ(a), for a > 0 and
/// x >= 0. Series expansion below x < a + 1, Lentz continued fraction above;
/// both iterate to a relative tolerance of 1e-15 (at most 1000 terms).
double regularized_gamma_q(double a, double x);

/// Survival function of the chi-square distribution with `df` degrees of
/// freedom.
double chi_square_sf(double statistic, double df);

}  // namespace sqb
