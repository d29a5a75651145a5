#pragma once

#include <functional>

namespace fuzzynv {

struct Bracket {
  double lo = 0.0;
  double hi = 0.0;
};

/// Solves cdf(x) = target for a continuous non-decreasing cdf.
///
/// The bracket is widened (doubling its half-width, at most 16 times) until
/// cdf(lo) <= target <= cdf(hi); failure throws NumericalError. Bisection runs
/// to a width of 1e-6, then up to three Newton steps use `pdf` (skipped when
/// empty), each kept inside the current bracket. If the residual still exceeds
/// `residual_tol`, bisection continues to machine resolution.
double invert_cdf(const std::function<double(double)>& cdf, const std::function<double(double)>& pdf,
                  double target, Bracket bracket, double residual_tol = 1e-10);

}  // namespace fuzzynv
