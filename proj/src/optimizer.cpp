#include "fuzzynv/optimizer.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <sstream>

#include "fuzzynv/error.hpp"

namespace fuzzynv {
namespace {

constexpr double kOracleRelTol = 1e-12;
constexpr unsigned kOracleDepth = 15;

template <class F>
double gk_integrate(F&& f, double a, double b) {
  if (!(b > a)) return 0.0;
  double error = 0.0;
  double l1 = 0.0;
  const double v = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      std::forward<F>(f), a, b, kOracleDepth, kOracleRelTol, &error, &l1);
  if (!std::isfinite(v)) throw NumericalError("2-D oracle quadrature produced a non-finite value");
  // Gauss-Kronrod error estimates are pessimistic; only fail on a clearly
  // unresolved integral.
  if (error > 1e-6 * std::max(1.0, l1)) {
    std::ostringstream os;
    os << "2-D oracle quadrature did not converge on [" << a << ", " << b << "], error estimate " << error;
    throw NumericalError(os.str(), error);
  }
  return v;
}

// int_{x1_lo}^{x1_hi} dx1 int_{inner_lo(x1)}^{inner_hi(x1)} dx2 g(x1, x2)
template <class G, class Lo, class Hi>
double wedge_integral(G&& g, double x1_lo, double x1_hi, Lo inner_lo, Hi inner_hi) {
  return gk_integrate(
      [&](double x1) {
        return gk_integrate([&](double x2) { return g(x1, x2); }, inner_lo(x1), inner_hi(x1));
      },
      x1_lo, x1_hi);
}

}  // namespace

double optimal_q_crisp_weight(double p, const GaussianComponent& c1, const GaussianComponent& c2,
                              const CostStructure& k) {
  if (p == 1.0) return classical_optimal_q(DemandDistribution::of(c1), k);
  if (p == 0.0) return classical_optimal_q(DemandDistribution::of(c2), k);
  return classical_optimal_q(DemandDistribution::of(GmmDemand(c1, c2, p)), k);
}

double optimal_q_mean_weight(const TrapezoidalFuzzyNumber& p_tilde, const GaussianComponent& c1,
                             const GaussianComponent& c2, const CostStructure& k) {
  if (!p_tilde.is_weight()) throw InvalidArgument("fuzzy weight must have support in [0, 1]");
  return optimal_q_crisp_weight(p_tilde.expected_value(), c1, c2, k);
}

double optimal_q_uniform(double pm, double pM, const GaussianComponent& c1, const GaussianComponent& c2,
                         const CostStructure& k) {
  if (!(0.0 <= pm && pm <= pM && pM <= 1.0)) {
    std::ostringstream os;
    os << "uniform weight interval needs 0 <= pm <= pM <= 1, got [" << pm << ", " << pM << "]";
    throw InvalidArgument(os.str());
  }
  if (pm == pM) return optimal_q_crisp_weight(pm, c1, c2, k);
  // Expected profit averaged over p is the expected profit under the
  // p-averaged CDF; average it numerically rather than collapsing to the
  // midpoint so the model stays separate from the mean-weight one.
  using boost::math::quadrature::gauss;
  const double width = pM - pm;
  auto averaged = [=](auto&& per_p) {
    return gauss<double, 7>::integrate(per_p, pm, pM) / width;
  };
  const DemandDistribution dist(
      [=](double x) {
        const double F1 = c1.cdf(x), F2 = c2.cdf(x);
        return averaged([&](double p) { return p * F1 + (1.0 - p) * F2; });
      },
      effective_support(c1, c2),
      [=](double x) {
        const double f1 = c1.pdf(x), f2 = c2.pdf(x);
        return averaged([&](double p) { return p * f1 + (1.0 - p) * f2; });
      });
  return classical_optimal_q(dist, k);
}

double optimal_q_beta(const DefuzzifiedDemand& d, const CostStructure& k) {
  return classical_optimal_q(DemandDistribution::of(d), k);
}

double objective_derivative(Side side, double order_q, const DefuzzifiedDemand& d, const CostStructure& k) {
  const GhjValues v = d.ghj(order_q);
  const double C = k.C(), M = k.M(), V = k.V();
  if (side == Side::left) {
    return (M - C) + (M + V - 2.0 * C) * v.G + (C - V) * v.H + (V - M) * v.J;
  }
  return (M - C) + (M + V - 2.0 * C) * v.G + (C - M) * v.H;
}

double combined_objective_derivative(double order_q, const DefuzzifiedDemand& d, const CostStructure& k) {
  const double beta = d.beta();
  return (1.0 - beta) * objective_derivative(Side::left, order_q, d, k) +
         beta * objective_derivative(Side::right, order_q, d, k);
}

double fuzzy_profit_leg_expectation(Side side, double order_q, const DefuzzifiedDemand& d,
                                    const CostStructure& k) {
  const Bracket s = d.support();
  const double q = std::clamp(order_q, s.lo, s.hi);
  const double A = k.A(), a = k.a(), bq = k.b() * order_q, aq = a * order_q;
  const MixtureCoefficients coeffs = d.coeffs();
  const GaussianComponent c1 = d.c1(), c2 = d.c2();
  auto density = [&](double x1, double x2) { return alpha_integrated_density(x1, x2, coeffs, c1, c2); };

  // Region 1: x1 <= x2 <= Q (both below the order quantity).
  auto h_below = [&](double x1, double x2) {
    const double y = side == Side::left ? A * x1 + aq : A * x2 + aq;
    return y * density(x1, x2);
  };
  // Region 2: Q <= x1 <= x2 (both above).
  auto h_above = [&](double x1, double x2) { return bq * density(x1, x2); };
  // Region 3: x1 <= Q <= x2 (straddling).
  auto h_split = [&](double x1, double x2) {
    const double y = side == Side::left ? std::min(A * x1 + aq, bq) : bq;
    return y * density(x1, x2);
  };

  const double r1 = wedge_integral(h_below, s.lo, q, [](double x1) { return x1; }, [q](double) { return q; });
  const double r2 = wedge_integral(h_above, q, s.hi, [](double x1) { return x1; }, [&](double) { return s.hi; });
  const double r3 = wedge_integral(h_split, s.lo, q, [q](double) { return q; }, [&](double) { return s.hi; });
  return r1 + r2 + r3;
}

double crossover_quantity(double q1, double q2, const CostStructure& k) {
  if (!(q1 < q2)) {
    std::ostringstream os;
    os << "crossover quantity needs Q1 < Q2, got " << q1 << " >= " << q2;
    throw InvalidArgument(os.str());
  }
  return ((k.M() - k.C()) * q1 + (k.C() - k.V()) * q2) / (k.M() - k.V());
}

PolicyComparison compare_policies(double q_candidate, const DefuzzifiedDemand& d, const CostStructure& k) {
  const DemandDistribution dist = DemandDistribution::of(d);
  PolicyComparison out;
  out.q_candidate = q_candidate;
  out.q_optimal = optimal_q_beta(d, k);
  const ProfitStats cand = profit_stats(dist, q_candidate, k);
  const ProfitStats opt = profit_stats(dist, out.q_optimal, k);
  out.expected_candidate = cand.expected_profit;
  out.expected_optimal = opt.expected_profit;
  out.variance_candidate = cand.profit_variance;
  out.variance_optimal = opt.profit_variance;
  if (cand.expected_profit > 0.0) {
    out.benefit_ratio = (opt.expected_profit - cand.expected_profit) / cand.expected_profit;
  }
  if (cand.profit_variance > 0.0) {
    out.variance_change = (opt.profit_variance - cand.profit_variance) / cand.profit_variance;
  }
  return out;
}

}  // namespace fuzzynv
