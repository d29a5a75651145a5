#pragma once

#include <span>

#include "fuzzynv/fuzzy.hpp"
#include "fuzzynv/normal.hpp"
#include "fuzzynv/roots.hpp"

namespace fuzzynv {

// Component convention used throughout: component 1 (c1, f1, F1) is the
// review/marketing-adjusted demand hypothesis and carries the weight p;
// component 2 (c2) is the historical one and carries 1 - p.

/// Risk attitude in [0, 1]: 0 maximizes the lower leg of the fuzzy profit
/// expectation, 1 the upper leg, 1/2 is risk neutral.
class RiskFactor {
 public:
  explicit RiskFactor(double beta);
  double value() const noexcept { return beta_; }
  friend bool operator==(RiskFactor, RiskFactor) = default;

 private:
  double beta_;
};

/// Interval on which all demand models built from (c1, c2) are resolved:
/// [min mu - 10 max sigma, max mu + 10 max sigma].
Bracket effective_support(const GaussianComponent& c1, const GaussianComponent& c2) noexcept;

/// Classical two-component mixture p * f1 + (1 - p) * f2.
class GmmDemand {
 public:
  GmmDemand(GaussianComponent c1, GaussianComponent c2, double p);

  const GaussianComponent& c1() const noexcept { return c1_; }
  const GaussianComponent& c2() const noexcept { return c2_; }
  double p() const noexcept { return p_; }

  double pdf(double x) const noexcept { return p_ * c1_.pdf(x) + (1.0 - p_) * c2_.pdf(x); }
  double cdf(double x) const noexcept { return p_ * c1_.cdf(x) + (1.0 - p_) * c2_.cdf(x); }
  double quantile(double u) const;
  double mean() const noexcept { return p_ * c1_.mu() + (1.0 - p_) * c2_.mu(); }
  double variance() const noexcept;

 private:
  GaussianComponent c1_;
  GaussianComponent c2_;
  double p_;
};

/// The coefficients (P1, P2, P3) obtained by integrating the alpha-indexed
/// joint density of (min, max) over alpha in [0, 1]. They satisfy
/// P1 + 2 P2 + P3 = 2, 0 <= P1, P3 <= 2 and 0 <= P2 <= 1.
struct MixtureCoefficients {
  double P1 = 0.0;
  double P2 = 0.0;
  double P3 = 0.0;
};

MixtureCoefficients mixture_coefficients(const TrapezoidalFuzzyNumber& p_tilde);

struct GhjValues {
  double G = 0.0;
  double H = 0.0;
  double J = 0.0;
};

struct DemandMoments {
  double mean = 0.0;
  double variance = 0.0;
};

/// The defuzzified demand X_{p,beta} with CDF H/2 + (1 - beta)(J - H).
class DefuzzifiedDemand {
 public:
  DefuzzifiedDemand(TrapezoidalFuzzyNumber p_tilde, RiskFactor beta, GaussianComponent c1,
                    GaussianComponent c2);

  const TrapezoidalFuzzyNumber& p_tilde() const noexcept { return p_tilde_; }
  double beta() const noexcept { return beta_.value(); }
  const GaussianComponent& c1() const noexcept { return c1_; }
  const GaussianComponent& c2() const noexcept { return c2_; }
  const MixtureCoefficients& coeffs() const noexcept { return coeffs_; }

  DefuzzifiedDemand with_beta(RiskFactor beta) const {
    return {p_tilde_, beta, c1_, c2_};
  }

  GhjValues ghj(double x) const noexcept;
  double cdf(double x) const noexcept;
  double pdf(double x) const noexcept;
  /// Lower-leg (beta = 0) and upper-leg (beta = 1) CDFs, J - H/2 and H/2.
  double cdf_left(double x) const noexcept;
  double cdf_right(double x) const noexcept;
  double quantile(double u) const;

  /// cdf and pdf over a grid through the vectorized kernels; agrees with the
  /// pointwise members to a few ulp. Either output may be empty.
  void evaluate_grid(std::span<const double> x, std::span<double> cdf, std::span<double> pdf) const;

  Bracket support() const noexcept { return effective_support(c1_, c2_); }

  /// Mean and variance by adaptive quadrature on the effective support.
  DemandMoments moments() const;

 private:
  TrapezoidalFuzzyNumber p_tilde_;
  RiskFactor beta_;
  GaussianComponent c1_;
  GaussianComponent c2_;
  MixtureCoefficients coeffs_;
};

inline GhjValues ghj_eval(double x, const DefuzzifiedDemand& d) noexcept { return d.ghj(x); }
inline double defuzzified_cdf(double x, const DefuzzifiedDemand& d) noexcept { return d.cdf(x); }
inline double defuzzified_pdf(double x, const DefuzzifiedDemand& d) noexcept { return d.pdf(x); }
inline DemandMoments defuzzified_moments(const DefuzzifiedDemand& d) { return d.moments(); }

/// Joint density of (min, max) of two independent mixtures with weights
/// taken from the endpoints of the alpha-cut of p_tilde. Zero for x2 < x1.
double joint_alpha_density(double x1, double x2, double alpha, const TrapezoidalFuzzyNumber& p_tilde,
                           const GaussianComponent& c1, const GaussianComponent& c2);

/// joint_alpha_density integrated over alpha in [0, 1], in closed form.
double alpha_integrated_density(double x1, double x2, const MixtureCoefficients& k,
                                const GaussianComponent& c1, const GaussianComponent& c2) noexcept;
inline double alpha_integrated_density(double x1, double x2, const TrapezoidalFuzzyNumber& p_tilde,
                                       const GaussianComponent& c1, const GaussianComponent& c2) {
  return alpha_integrated_density(x1, x2, mixture_coefficients(p_tilde), c1, c2);
}

}  // namespace fuzzynv
