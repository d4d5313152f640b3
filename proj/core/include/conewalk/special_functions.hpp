#pragma once

namespace conewalk {

/// Regularized lower incomplete gamma P(a, x) = gamma(a, x) / Gamma(a).
/// Series for x < a + 1, Lentz continued fraction otherwise; ~1e-14 relative,
/// degrading to ~1e-13 when the result is astronomically small.
double regularized_gamma_p(double a, double x);

/// Q(a, x) = 1 - P(a, x), computed without cancellation.
double regularized_gamma_q(double a, double x);

}  // namespace conewalk
