#include "fuzzynv/normal.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "fuzzynv/error.hpp"

namespace fuzzynv {
namespace {

constexpr double kTwoOverSqrtPi = 2.0 * std::numbers::inv_sqrtpi;
constexpr double kSeriesCutoff = 2.5;

// erf(x) = 2/sqrt(pi) * exp(-x^2) * sum_n 2^n x^(2n+1) / (1*3*...*(2n+1)).
// All terms are positive, so there is no cancellation.
double erf_series(double x) noexcept {
  const double x2 = x * x;
  double term = x;
  double sum = x;
  for (int n = 1; n < 200; ++n) {
    term *= 2.0 * x2 / (2.0 * n + 1.0);
    sum += term;
    if (term < sum * 1e-17) break;
  }
  return kTwoOverSqrtPi * std::exp(-x2) * sum;
}

// erfc(x) = exp(-x^2)/sqrt(pi) * 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + 2/(x + ...))))),
// evaluated with the modified Lentz algorithm; x > 0.
double erfc_continued_fraction(double x) noexcept {
  if (std::isinf(x)) return 0.0;
  constexpr double tiny = 1e-300;
  double f = x;
  double c = x;
  double d = 0.0;
  for (int k = 1; k < 500; ++k) {
    const double a = 0.5 * k;
    d = x + a * d;
    if (d == 0.0) d = tiny;
    c = x + a / c;
    if (c == 0.0) c = tiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return std::exp(-x * x) * std::numbers::inv_sqrtpi / f;
}

}  // namespace

double erf_series_cf(double x) noexcept {
  if (std::isnan(x)) return x;
  const double ax = std::abs(x);
  const double v = ax < kSeriesCutoff ? erf_series(ax) : 1.0 - erfc_continued_fraction(ax);
  return x < 0 ? -v : v;
}

double erfc_series_cf(double x) noexcept {
  if (std::isnan(x)) return x;
  if (x < kSeriesCutoff) {
    if (x > -kSeriesCutoff) return 1.0 - erf_series_cf(x);
    return 2.0 - erfc_continued_fraction(-x);
  }
  return erfc_continued_fraction(x);
}

double standard_normal_cdf(double z) noexcept {
  return 0.5 * erfc_series_cf(-z * std::numbers::sqrt2 / 2.0);
}

double standard_normal_pdf(double z) noexcept {
  return std::exp(-0.5 * z * z) * std::numbers::inv_sqrtpi / std::numbers::sqrt2;
}

// Newton on Phi(z) - u, bracketed by [lo, hi] with bisection fallback.
double standard_normal_quantile(double u) {
  if (!(u > 0.0 && u < 1.0)) {
    std::ostringstream os;
    os << "normal quantile requires 0 < u < 1, got " << u;
    throw InvalidArgument(os.str());
  }
  if (u == 0.5) return 0.0;
  // Symmetry keeps the tail computation on the side with relative accuracy.
  if (u > 0.5) {
    const double tail = 1.0 - u;
    if (tail > 0.0 && 1.0 - tail == u) return -standard_normal_quantile(tail);
  }
  // Starting point: Abramowitz & Stegun 26.2.23 (|error| < 4.5e-4).
  const double pt = u < 0.5 ? u : 1.0 - u;
  const double t = std::sqrt(-2.0 * std::log(pt));
  double z = t - (2.515517 + 0.802853 * t + 0.010328 * t * t) /
                     (1.0 + 1.432788 * t + 0.189269 * t * t + 0.001308 * t * t * t);
  if (u < 0.5) z = -z;

  double lo = -40.0;
  double hi = 40.0;
  for (int it = 0; it < 200; ++it) {
    const double f = standard_normal_cdf(z) - u;
    if (f == 0.0) return z;
    if (f < 0.0) {
      lo = z;
    } else {
      hi = z;
    }
    const double dens = standard_normal_pdf(z);
    double next = dens > 0.0 ? z - f / dens : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - z) <= 1e-15 * std::max(1.0, std::abs(z))) return next;
    z = next;
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(z))) {
      return z;
    }
  }
  return z;
}

GaussianComponent::GaussianComponent(double mu, double sigma) : mu_(mu), sigma_(sigma) {
  if (!std::isfinite(mu) || !std::isfinite(sigma) || !(sigma > 0.0)) {
    std::ostringstream os;
    os << "Gaussian component needs finite mu and sigma > 0, got (" << mu << ", " << sigma << ")";
    throw InvalidArgument(os.str());
  }
}

double GaussianComponent::pdf(double x) const noexcept {
  return standard_normal_pdf((x - mu_) / sigma_) / sigma_;
}

double GaussianComponent::cdf(double x) const noexcept {
  return standard_normal_cdf((x - mu_) / sigma_);
}

double GaussianComponent::sf(double x) const noexcept {
  return standard_normal_cdf((mu_ - x) / sigma_);
}

double GaussianComponent::quantile(double u) const {
  return mu_ + sigma_ * standard_normal_quantile(u);
}

}  // namespace fuzzynv
