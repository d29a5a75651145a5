#pragma once

// Reference computations used to check the library. None of them share code
// with the routines they check: normal probabilities come from std::erfc,
// quantiles from plain bisection, integrals from composite Gauss-Legendre,
// the defuzzified demand from integrating over alpha numerically, and random
// draws from std::mt19937_64.

#include <array>
#include <cstdint>
#include <functional>
#include <random>

#include "fuzzynv/newsvendor.hpp"

namespace fuzzynv::verification {

struct Components {
  double mu1, sigma1, mu2, sigma2;
};

double ref_normal_cdf(double x, double mu, double sigma);
double ref_normal_pdf(double x, double mu, double sigma);

/// Root of f(x) = target for increasing f on [lo, hi] by bisection.
double ref_bisect(const std::function<double(double)>& f, double target, double lo, double hi);

/// Composite 20-point Gauss-Legendre over `panels` equal panels.
double ref_integrate(const std::function<double(double)>& f, double a, double b, int panels = 200);

double ref_mixture_cdf(double x, double p, const Components& c);

/// (P1, P2, P3) as alpha-integrals of products of the cut endpoints:
/// P1 = 2 int p1(a) p2(a), P2 = int p1(a)(1 - p2(a)) + p2(a)(1 - p1(a)),
/// P3 = 2 int (1 - p1(a))(1 - p2(a)).
std::array<double, 3> ref_mixture_coefficients(const std::array<double, 4>& legs);

/// CDF and density of the defuzzified demand from their alpha-integral
/// definition: beta * P(max <= x) + (1 - beta) * P(min <= x), where the max
/// and min are taken over two independent mixtures weighted by the alpha-cut
/// endpoints.
double ref_defuzzified_cdf(double x, const std::array<double, 4>& legs, double beta, const Components& c);
double ref_defuzzified_pdf(double x, const std::array<double, 4>& legs, double beta, const Components& c);

/// Exact sampler of the defuzzified demand.
class DefuzzifiedSampler {
 public:
  DefuzzifiedSampler(std::array<double, 4> legs, double beta, Components c, std::uint64_t seed);
  double operator()();

 private:
  double mixture_draw(double p);

  std::array<double, 4> legs_;
  double beta_;
  Components c_;
  std::mt19937_64 rng_;
  std::uniform_real_distribution<double> unit_{0.0, 1.0};
  std::normal_distribution<double> normal_{0.0, 1.0};
};

struct MonteCarloProfit {
  double mean = 0.0;
  double variance = 0.0;
  double se_mean = 0.0;      ///< standard error of the mean
  double se_variance = 0.0;  ///< standard error of the sample variance
};

MonteCarloProfit ref_monte_carlo_profit(const std::function<double()>& draw, long long n, double order_q,
                                        const CostStructure& k);

/// E[profit] straight from its two branches:
/// int_lo^Q (A x + a Q) f(x) dx + b Q (1 - F(Q)).
double ref_direct_expected_profit(const std::function<double(double)>& pdf, const std::function<double(double)>& cdf,
                                  double lo, double order_q, const CostStructure& k);

/// Central difference with one Richardson step: (4 D(h/2) - D(h)) / 3.
double ref_derivative(const std::function<double(double)>& f, double x, double h);

}  // namespace fuzzynv::verification
