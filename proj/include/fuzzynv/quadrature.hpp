#pragma once

#include <cmath>
#include <sstream>
#include <string_view>

#include "fuzzynv/error.hpp"

namespace fuzzynv {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  bool converged = true;
  long evaluations = 0;
};

namespace detail {

template <class F>
struct SimpsonState {
  F& f;
  long evaluations = 0;
  bool converged = true;
  double error = 0.0;

  double eval(double x) {
    ++evaluations;
    return f(x);
  }

  // Recursive adaptive Simpson with the Richardson (1/15) correction.
  double refine(double a, double b, double fa, double fm, double fb, double whole, double tol,
                int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = eval(lm);
    const double frm = eval(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol) {
      error += std::abs(delta) / 15.0;
      return left + right + delta / 15.0;
    }
    if (depth <= 0 || m <= a || b <= m) {
      converged = false;
      error += std::abs(delta) / 15.0;
      return left + right + delta / 15.0;
    }
    return refine(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           refine(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
  }
};

}  // namespace detail

/// Adaptive Simpson quadrature of f over [a, b] to absolute tolerance abs_tol.
/// The interval is first cut into `panels` equal pieces (each gets an equal
/// share of the tolerance) so narrow peaks in a wide range are not skipped.
template <class F>
QuadratureResult adaptive_simpson(F&& f, double a, double b, double abs_tol, int panels = 32,
                                  int max_depth = 48) {
  QuadratureResult out;
  if (a == b) return out;
  double sign = 1.0;
  if (b < a) {
    std::swap(a, b);
    sign = -1.0;
  }
  detail::SimpsonState<std::remove_reference_t<F>> st{f};
  const double h = (b - a) / panels;
  double total = 0.0;
  double fa = st.eval(a);
  for (int i = 0; i < panels; ++i) {
    const double lo = a + h * i;
    const double hi = i + 1 == panels ? b : a + h * (i + 1);
    const double m = 0.5 * (lo + hi);
    const double fm = st.eval(m);
    const double fb = st.eval(hi);
    const double whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
    total += st.refine(lo, hi, fa, fm, fb, whole, abs_tol / panels, max_depth);
    fa = fb;
  }
  out.value = sign * total;
  out.error_estimate = st.error;
  out.converged = st.converged && std::isfinite(total);
  out.evaluations = st.evaluations;
  return out;
}

/// adaptive_simpson that throws NumericalError (carrying the residual
/// estimate) when the recursion limit is hit before reaching the tolerance.
template <class F>
double integrate(F&& f, double a, double b, double abs_tol, std::string_view what = "integral") {
  const QuadratureResult r = adaptive_simpson(std::forward<F>(f), a, b, abs_tol);
  if (!r.converged) {
    std::ostringstream os;
    os << "adaptive quadrature of " << what << " on [" << a << ", " << b
       << "] did not converge; residual estimate " << r.error_estimate;
    throw NumericalError(os.str(), r.error_estimate);
  }
  return r.value;
}

}  // namespace fuzzynv
