#include "fuzzynv/demand.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "fuzzynv/diagnostics.hpp"
#include "fuzzynv/error.hpp"
#include "fuzzynv/kernels.hpp"
#include "fuzzynv/quadrature.hpp"

namespace fuzzynv {
namespace {

constexpr double kNegativeMassWarning = 1e-6;
constexpr double kMomentTolerance = 1e-10;

void warn_negative_demand(const GaussianComponent& c, int index) {
  const double mass = c.cdf(0.0);
  if (mass > kNegativeMassWarning) {
    std::ostringstream os;
    os << "component " << index << " N(" << c.mu() << ", " << c.sigma() << "^2) puts mass " << mass
       << " on negative demand; profit formulas integrate from 0 and assume this is negligible";
    warn(os.str());
  }
}

}  // namespace

RiskFactor::RiskFactor(double beta) : beta_(beta) {
  if (!(beta >= 0.0 && beta <= 1.0)) {
    std::ostringstream os;
    os << "risk factor beta must lie in [0, 1], got " << beta;
    throw InvalidArgument(os.str());
  }
}

Bracket effective_support(const GaussianComponent& c1, const GaussianComponent& c2) noexcept {
  const double s = std::max(c1.sigma(), c2.sigma());
  return {std::min(c1.mu(), c2.mu()) - 10.0 * s, std::max(c1.mu(), c2.mu()) + 10.0 * s};
}

GmmDemand::GmmDemand(GaussianComponent c1, GaussianComponent c2, double p)
    : c1_(c1), c2_(c2), p_(p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    std::ostringstream os;
    os << "mixture weight must lie in [0, 1], got " << p;
    throw InvalidArgument(os.str());
  }
  if (p > 0.0) warn_negative_demand(c1_, 1);
  if (p < 1.0) warn_negative_demand(c2_, 2);
}

double GmmDemand::quantile(double u) const {
  if (!(u > 0.0 && u < 1.0)) throw InvalidArgument("mixture quantile requires 0 < u < 1");
  if (p_ == 1.0) return c1_.quantile(u);
  if (p_ == 0.0) return c2_.quantile(u);
  return invert_cdf([this](double x) { return cdf(x); }, [this](double x) { return pdf(x); }, u,
                    effective_support(c1_, c2_));
}

double GmmDemand::variance() const noexcept {
  const double dm = c1_.mu() - c2_.mu();
  return p_ * c1_.sigma() * c1_.sigma() + (1.0 - p_) * c2_.sigma() * c2_.sigma() +
         p_ * (1.0 - p_) * dm * dm;
}

MixtureCoefficients mixture_coefficients(const TrapezoidalFuzzyNumber& p_tilde) {
  if (!p_tilde.is_weight()) {
    throw InvalidArgument("mixture coefficients need a fuzzy weight with support in [0, 1]");
  }
  const auto [p1, p2, p3, p4] = p_tilde.legs();
  MixtureCoefficients k;
  k.P1 = p1 * p3 / 3.0 + 2.0 * p2 * p3 / 3.0 + 2.0 * p1 * p4 / 3.0 + p2 * p4 / 3.0;
  k.P2 = p1 / 2.0 - p3 * p1 / 3.0 - 2.0 * p4 * p1 / 3.0 + p2 / 2.0 + p3 / 2.0 + p4 / 2.0 -
         2.0 * p2 * p3 / 3.0 - p2 * p4 / 3.0;
  // P3 in the complementary variables q_i = 1 - p_i, which keeps it exactly
  // non-negative in floating point.
  const double q1 = 1.0 - p1, q2 = 1.0 - p2, q3 = 1.0 - p3, q4 = 1.0 - p4;
  k.P3 = q1 * q3 / 3.0 + 2.0 * q2 * q3 / 3.0 + 2.0 * q1 * q4 / 3.0 + q2 * q4 / 3.0;
  return k;
}

DefuzzifiedDemand::DefuzzifiedDemand(TrapezoidalFuzzyNumber p_tilde, RiskFactor beta,
                                     GaussianComponent c1, GaussianComponent c2)
    : p_tilde_(p_tilde), beta_(beta), c1_(c1), c2_(c2), coeffs_(mixture_coefficients(p_tilde)) {
  warn_negative_demand(c1_, 1);
  warn_negative_demand(c2_, 2);
}

GhjValues DefuzzifiedDemand::ghj(double x) const noexcept {
  const double F1 = c1_.cdf(x);
  const double F2 = c2_.cdf(x);
  const auto& [P1, P2, P3] = coeffs_;
  const double H = P1 * F1 * F1 + 2.0 * P2 * F1 * F2 + P3 * F2 * F2;
  const double J = P1 * F1 + P2 * (F1 + F2) + P3 * F2;
  return {0.5 * H, H, J};
}

namespace {

// H/2 + (1 - beta)(J - H) built from the component CDFs. The complement has
// the same form in the survival functions with beta and 1 - beta swapped, so
// above 1/2 the value is taken as 1 minus that; this keeps the upper tail
// accurate and monotone instead of accumulating rounding next to 1.
double mixed_cdf(const MixtureCoefficients& k, const GaussianComponent& c1, const GaussianComponent& c2,
                 double x, double beta) noexcept {
  const auto form = [&](double a, double b, double w) {
    const double H = k.P1 * a * a + 2.0 * k.P2 * a * b + k.P3 * b * b;
    const double J = k.P1 * a + k.P2 * (a + b) + k.P3 * b;
    return 0.5 * H + w * (J - H);
  };
  const double lower = form(c1.cdf(x), c2.cdf(x), 1.0 - beta);
  if (lower <= 0.5) return std::max(lower, 0.0);
  const double upper = form(c1.sf(x), c2.sf(x), beta);
  return std::clamp(1.0 - upper, 0.0, 1.0);
}

}  // namespace

double DefuzzifiedDemand::cdf(double x) const noexcept { return mixed_cdf(coeffs_, c1_, c2_, x, beta_.value()); }

double DefuzzifiedDemand::cdf_left(double x) const noexcept { return mixed_cdf(coeffs_, c1_, c2_, x, 0.0); }

double DefuzzifiedDemand::cdf_right(double x) const noexcept { return mixed_cdf(coeffs_, c1_, c2_, x, 1.0); }

double DefuzzifiedDemand::pdf(double x) const noexcept {
  const double F1 = c1_.cdf(x);
  const double F2 = c2_.cdf(x);
  const double f1 = c1_.pdf(x);
  const double f2 = c2_.pdf(x);
  const auto& [P1, P2, P3] = coeffs_;
  const double beta = beta_.value();
  const double value = (2.0 * beta - 1.0) * (f1 * (P1 * F1 + P2 * F2) + f2 * (P2 * F1 + P3 * F2)) +
                       (1.0 - beta) * ((P1 + P2) * f1 + (P2 + P3) * f2);
  return std::max(value, 0.0);
}

double DefuzzifiedDemand::quantile(double u) const {
  if (!(u > 0.0 && u < 1.0)) throw InvalidArgument("defuzzified quantile requires 0 < u < 1");
  return invert_cdf([this](double x) { return cdf(x); }, [this](double x) { return pdf(x); }, u,
                    support());
}

void DefuzzifiedDemand::evaluate_grid(std::span<const double> x, std::span<double> cdf,
                                      std::span<double> pdf) const {
  if ((!cdf.empty() && cdf.size() != x.size()) || (!pdf.empty() && pdf.size() != x.size())) {
    throw InvalidArgument("evaluate_grid: output size differs from grid size");
  }
  const std::size_t n = x.size();
  std::vector<double> F1(n), F2(n), f1(n), f2(n);
  for (std::size_t i = 0; i < n; ++i) {
    F1[i] = c1_.cdf(x[i]);
    F2[i] = c2_.cdf(x[i]);
  }
  kernels::gaussian_pdf(x, c1_.mu(), c1_.sigma(), f1);
  kernels::gaussian_pdf(x, c2_.mu(), c2_.sigma(), f2);
  kernels::defuzzified_columns({F1, F2, f1, f2}, coeffs_.P1, coeffs_.P2, coeffs_.P3, beta_.value(), cdf, pdf);
}

DemandMoments DefuzzifiedDemand::moments() const {
  const Bracket s = support();
  const double mean =
      integrate([this](double x) { return x * pdf(x); }, s.lo, s.hi, kMomentTolerance, "demand mean");
  const double var = integrate(
      [this, mean](double x) {
        const double d = x - mean;
        return d * d * pdf(x);
      },
      s.lo, s.hi, kMomentTolerance, "demand variance");
  return {mean, var};
}

double joint_alpha_density(double x1, double x2, double alpha, const TrapezoidalFuzzyNumber& p_tilde,
                           const GaussianComponent& c1, const GaussianComponent& c2) {
  const AlphaCut cut = p_tilde.alpha_cut(alpha);
  if (x2 < x1) return 0.0;
  const double f1a = c1.pdf(x1), f1b = c1.pdf(x2);
  const double f2a = c2.pdf(x1), f2b = c2.pdf(x2);
  // Densities of X^1_alpha (weight cut.lo) and X^2_alpha (weight cut.hi).
  const double g1 = cut.lo * f1a + (1.0 - cut.lo) * f2a;
  const double g1b = cut.lo * f1b + (1.0 - cut.lo) * f2b;
  const double g2 = cut.hi * f1a + (1.0 - cut.hi) * f2a;
  const double g2b = cut.hi * f1b + (1.0 - cut.hi) * f2b;
  return g1 * g2b + g2 * g1b;
}

double alpha_integrated_density(double x1, double x2, const MixtureCoefficients& k,
                                const GaussianComponent& c1, const GaussianComponent& c2) noexcept {
  if (x2 < x1) return 0.0;
  const double f1a = c1.pdf(x1), f1b = c1.pdf(x2);
  const double f2a = c2.pdf(x1), f2b = c2.pdf(x2);
  return k.P1 * f1a * f1b + k.P2 * (f1a * f2b + f2a * f1b) + k.P3 * f2a * f2b;
}

}  // namespace fuzzynv
