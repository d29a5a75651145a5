#include "fuzzynv/verification/oracles.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <numbers>

#include "fuzzynv/error.hpp"

namespace fuzzynv::verification {

double ref_normal_cdf(double x, double mu, double sigma) {
  return 0.5 * std::erfc(-(x - mu) / (sigma * std::numbers::sqrt2));
}

double ref_normal_pdf(double x, double mu, double sigma) {
  const double z = (x - mu) / sigma;
  return std::exp(-0.5 * z * z) / (sigma * std::sqrt(2.0 * std::numbers::pi));
}

double ref_bisect(const std::function<double(double)>& f, double target, double lo, double hi) {
  if (!(f(lo) <= target && f(hi) >= target)) throw InvalidArgument("ref_bisect: target not bracketed");
  for (int i = 0; i < 200 && hi - lo > 0.0; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (f(mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double ref_integrate(const std::function<double(double)>& f, double a, double b, int panels) {
  using boost::math::quadrature::gauss;
  const double w = (b - a) / panels;
  double sum = 0.0;
  for (int i = 0; i < panels; ++i) {
    const double lo = a + w * i;
    sum += gauss<double, 20>::integrate(f, lo, i + 1 == panels ? b : lo + w);
  }
  return sum;
}

double ref_mixture_cdf(double x, double p, const Components& c) {
  return p * ref_normal_cdf(x, c.mu1, c.sigma1) + (1.0 - p) * ref_normal_cdf(x, c.mu2, c.sigma2);
}

namespace {

double lower_end(const std::array<double, 4>& p, double a) { return p[0] + (p[1] - p[0]) * a; }
double upper_end(const std::array<double, 4>& p, double a) { return p[3] + (p[2] - p[3]) * a; }

// Integrands are polynomials of degree <= 2 in alpha, so a 10-point rule is exact.
template <class F>
double over_alpha(F&& f) {
  return boost::math::quadrature::gauss<double, 10>::integrate(f, 0.0, 1.0);
}

}  // namespace

std::array<double, 3> ref_mixture_coefficients(const std::array<double, 4>& p) {
  const double P1 = over_alpha([&](double a) { return 2.0 * lower_end(p, a) * upper_end(p, a); });
  const double P2 = over_alpha([&](double a) {
    const double l = lower_end(p, a), u = upper_end(p, a);
    return l * (1.0 - u) + u * (1.0 - l);
  });
  const double P3 = over_alpha([&](double a) { return 2.0 * (1.0 - lower_end(p, a)) * (1.0 - upper_end(p, a)); });
  return {P1, P2, P3};
}

double ref_defuzzified_cdf(double x, const std::array<double, 4>& p, double beta, const Components& c) {
  const double F1 = ref_normal_cdf(x, c.mu1, c.sigma1);
  const double F2 = ref_normal_cdf(x, c.mu2, c.sigma2);
  return over_alpha([&](double a) {
    const double G1 = lower_end(p, a) * F1 + (1.0 - lower_end(p, a)) * F2;
    const double G2 = upper_end(p, a) * F1 + (1.0 - upper_end(p, a)) * F2;
    const double p_max = G1 * G2;
    const double p_min = 1.0 - (1.0 - G1) * (1.0 - G2);
    return beta * p_max + (1.0 - beta) * p_min;
  });
}

double ref_defuzzified_pdf(double x, const std::array<double, 4>& p, double beta, const Components& c) {
  const double F1 = ref_normal_cdf(x, c.mu1, c.sigma1);
  const double F2 = ref_normal_cdf(x, c.mu2, c.sigma2);
  const double f1 = ref_normal_pdf(x, c.mu1, c.sigma1);
  const double f2 = ref_normal_pdf(x, c.mu2, c.sigma2);
  return over_alpha([&](double a) {
    const double l = lower_end(p, a), u = upper_end(p, a);
    const double G1 = l * F1 + (1.0 - l) * F2, g1 = l * f1 + (1.0 - l) * f2;
    const double G2 = u * F1 + (1.0 - u) * F2, g2 = u * f1 + (1.0 - u) * f2;
    const double d_max = g1 * G2 + G1 * g2;
    const double d_min = g1 * (1.0 - G2) + (1.0 - G1) * g2;
    return beta * d_max + (1.0 - beta) * d_min;
  });
}

DefuzzifiedSampler::DefuzzifiedSampler(std::array<double, 4> legs, double beta, Components c, std::uint64_t seed)
    : legs_(legs), beta_(beta), c_(c), rng_(seed) {}

double DefuzzifiedSampler::mixture_draw(double p) {
  const bool first = unit_(rng_) < p;
  const double z = normal_(rng_);
  return first ? c_.mu1 + c_.sigma1 * z : c_.mu2 + c_.sigma2 * z;
}

double DefuzzifiedSampler::operator()() {
  const double a = unit_(rng_);
  const double x1 = mixture_draw(lower_end(legs_, a));
  const double x2 = mixture_draw(upper_end(legs_, a));
  return unit_(rng_) < beta_ ? std::max(x1, x2) : std::min(x1, x2);
}

MonteCarloProfit ref_monte_carlo_profit(const std::function<double()>& draw, long long n, double order_q,
                                        const CostStructure& k) {
  // Two passes over stored samples: mean first, then central moments.
  std::vector<double> y(static_cast<std::size_t>(n));
  for (auto& v : y) {
    const double x = draw();
    v = x <= order_q ? k.M() * x + k.V() * (order_q - x) - k.C() * order_q : (k.M() - k.C()) * order_q;
  }
  double mean = 0.0;
  for (double v : y) mean += v;
  mean /= static_cast<double>(n);
  double m2 = 0.0, m4 = 0.0;
  for (double v : y) {
    const double d2 = (v - mean) * (v - mean);
    m2 += d2;
    m4 += d2 * d2;
  }
  const double nn = static_cast<double>(n);
  MonteCarloProfit out;
  out.mean = mean;
  out.variance = m2 / (nn - 1.0);
  m2 /= nn;
  m4 /= nn;
  out.se_mean = std::sqrt(out.variance / nn);
  out.se_variance = std::sqrt(std::max(0.0, m4 - m2 * m2) / nn);
  return out;
}

double ref_direct_expected_profit(const std::function<double(double)>& pdf, const std::function<double(double)>& cdf,
                                  double lo, double order_q, const CostStructure& k) {
  const double below = ref_integrate(
      [&](double x) { return (k.M() * x + k.V() * (order_q - x) - k.C() * order_q) * pdf(x); }, lo, order_q, 400);
  return below + (k.M() - k.C()) * order_q * (1.0 - cdf(order_q));
}

double ref_derivative(const std::function<double(double)>& f, double x, double h) {
  const double d_h = (f(x + h) - f(x - h)) / (2.0 * h);
  const double d_half = (f(x + 0.5 * h) - f(x - 0.5 * h)) / h;
  return (4.0 * d_half - d_h) / 3.0;
}

}  // namespace fuzzynv::verification
