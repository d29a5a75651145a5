#include "fuzzynv/roots.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "fuzzynv/error.hpp"

namespace fuzzynv {

double invert_cdf(const std::function<double(double)>& cdf, const std::function<double(double)>& pdf,
                  double target, Bracket bracket, double residual_tol) {
  double lo = bracket.lo;
  double hi = bracket.hi;
  if (!(lo < hi)) throw InvalidArgument("root bracket must satisfy lo < hi");
  double flo = cdf(lo) - target;
  double fhi = cdf(hi) - target;
  for (int grow = 0; grow < 16 && (flo > 0.0 || fhi < 0.0); ++grow) {
    const double mid = 0.5 * (lo + hi);
    const double half = hi - lo;
    if (flo > 0.0) {
      lo = mid - half;
      flo = cdf(lo) - target;
    }
    if (fhi < 0.0) {
      hi = mid + half;
      fhi = cdf(hi) - target;
    }
  }
  if (flo > 0.0 || fhi < 0.0 || std::isnan(flo) || std::isnan(fhi)) {
    std::ostringstream os;
    os << "cannot bracket cdf(x) = " << target << " (cdf(" << lo << ") = " << flo + target
       << ", cdf(" << hi << ") = " << fhi + target << ")";
    throw NumericalError(os.str(), std::min(std::abs(flo), std::abs(fhi)));
  }
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;

  while (hi - lo > 1e-6) {
    const double mid = 0.5 * (lo + hi);
    const double fm = cdf(mid) - target;
    if (fm == 0.0) return mid;
    (fm < 0.0 ? lo : hi) = mid;
  }

  double x = 0.5 * (lo + hi);
  double fx = cdf(x) - target;
  if (pdf) {
    for (int step = 0; step < 3 && fx != 0.0; ++step) {
      (fx < 0.0 ? lo : hi) = x;
      const double d = pdf(x);
      if (!(d > 0.0)) break;
      const double next = x - fx / d;
      if (!(next >= lo && next <= hi)) break;
      x = next;
      fx = cdf(x) - target;
    }
  }
  // Bisection polish if Newton was unavailable or insufficient.
  while (std::abs(fx) > residual_tol) {
    (fx < 0.0 ? lo : hi) = x;
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    x = mid;
    fx = cdf(x) - target;
  }
  return x;
}

}  // namespace fuzzynv
