#pragma once

#include <optional>

#include "fuzzynv/demand.hpp"
#include "fuzzynv/newsvendor.hpp"

namespace fuzzynv {

/// Which leg of the fuzzy profit expectation: the lower endpoint of each
/// alpha-cut (left) or the upper endpoint (right).
enum class Side { left, right };

/// Q* for the classical mixture with crisp weight p (p = 0 and p = 1 give the
/// single-hypothesis newsvendor solutions).
double optimal_q_crisp_weight(double p, const GaussianComponent& c1, const GaussianComponent& c2,
                              const CostStructure& k);

/// Q* for the mixture weighted by the credibility expectation of p_tilde.
double optimal_q_mean_weight(const TrapezoidalFuzzyNumber& p_tilde, const GaussianComponent& c1,
                             const GaussianComponent& c2, const CostStructure& k);

/// Q* maximizing the profit expectation averaged over a weight uniformly
/// distributed on [pm, pM].
double optimal_q_uniform(double pm, double pM, const GaussianComponent& c1, const GaussianComponent& c2,
                         const CostStructure& k);

/// Q* maximizing (1 - beta) * left-leg + beta * right-leg expectation, i.e. the
/// critical-fractile quantile of the defuzzified demand.
double optimal_q_beta(const DefuzzifiedDemand& d, const CostStructure& k);

/// Closed-form dQ of the alpha-averaged leg expectation.
///   left:  (M - C) + (M + V - 2C) G + (C - V) H + (V - M) J
///   right: (M - C) + (M + V - 2C) G + (C - M) H
double objective_derivative(Side side, double order_q, const DefuzzifiedDemand& d, const CostStructure& k);

/// (1 - beta) * left derivative + beta * right derivative, with beta from d.
double combined_objective_derivative(double order_q, const DefuzzifiedDemand& d, const CostStructure& k);

/// Ground-truth value of int_0^1 E[Y_alpha^side] d alpha by two-dimensional
/// adaptive quadrature of the alpha-integrated (min, max) density over the
/// three ordered regions of the wedge x1 <= x2 cut at Q, truncated to the
/// effective support.
double fuzzy_profit_leg_expectation(Side side, double order_q, const DefuzzifiedDemand& d,
                                    const CostStructure& k);

/// Demand level above which ordering Q2 beats ordering Q1 (Q1 < Q2):
/// ((M - C) Q1 + (C - V) Q2) / (M - V).
double crossover_quantity(double q1, double q2, const CostStructure& k);

/// Relative gain of ordering Q*_{p,beta} instead of q_candidate, with both
/// evaluated under the defuzzified demand. Ratios are signed fractions; they
/// are empty when the candidate's expectation (or variance) is not positive.
struct PolicyComparison {
  double q_candidate = 0.0;
  double q_optimal = 0.0;
  double expected_candidate = 0.0;
  double expected_optimal = 0.0;
  double variance_candidate = 0.0;
  double variance_optimal = 0.0;
  std::optional<double> benefit_ratio;
  std::optional<double> variance_change;
};

PolicyComparison compare_policies(double q_candidate, const DefuzzifiedDemand& d, const CostStructure& k);

}  // namespace fuzzynv
