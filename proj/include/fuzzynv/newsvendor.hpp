#pragma once

#include <functional>
#include <span>

#include "fuzzynv/demand.hpp"
#include "fuzzynv/roots.hpp"

namespace fuzzynv {

/// Unit purchase cost C, selling price M and salvage value V, with V < C < M.
class CostStructure {
 public:
  CostStructure(double purchase_cost, double selling_price, double salvage_value);

  double C() const noexcept { return C_; }
  double M() const noexcept { return M_; }
  double V() const noexcept { return V_; }

  double A() const noexcept { return M_ - V_; }  ///< slope of profit in demand below Q
  double a() const noexcept { return V_ - C_; }  ///< overage loss per unit, < 0
  double b() const noexcept { return M_ - C_; }  ///< underage margin per unit, > 0

  /// (M - C) / (M - V), strictly inside (0, 1).
  double critical_fractile() const noexcept { return b() / A(); }

  friend bool operator==(const CostStructure&, const CostStructure&) = default;

 private:
  double C_;
  double M_;
  double V_;
};

inline double critical_fractile(const CostStructure& k) noexcept { return k.critical_fractile(); }

/// Type-erased demand distribution: a CDF plus optional density and quantile,
/// and the bracket used when the CDF has to be inverted numerically.
class DemandDistribution {
 public:
  using Fn = std::function<double(double)>;

  DemandDistribution(Fn cdf, Bracket bracket, Fn pdf = {}, Fn quantile = {});

  static DemandDistribution of(const GaussianComponent& c);
  static DemandDistribution of(const GmmDemand& g);
  static DemandDistribution of(const DefuzzifiedDemand& d);

  double cdf(double x) const { return cdf_(x); }
  bool has_pdf() const noexcept { return static_cast<bool>(pdf_); }
  double pdf(double x) const { return pdf_(x); }
  bool has_quantile() const noexcept { return static_cast<bool>(quantile_); }
  double quantile(double u) const { return quantile_(u); }
  Bracket bracket() const noexcept { return bracket_; }

  const Fn& cdf_fn() const noexcept { return cdf_; }
  const Fn& pdf_fn() const noexcept { return pdf_; }

 private:
  Fn cdf_;
  Fn pdf_;
  Fn quantile_;
  Bracket bracket_;
};

struct ProfitStats {
  double order_q = 0.0;
  double expected_profit = 0.0;
  double profit_variance = 0.0;
};

/// Profit for realized demand x and order quantity Q.
double profit(double demand, double order_q, const CostStructure& k);

/// Expected profit (V - M) * int_0^Q F + (M - C) Q by adaptive quadrature.
double expected_profit(const DemandDistribution& demand, double order_q, const CostStructure& k);

/// Profit variance (M - V)^2 (2 Q I1 - 2 I2 - I1^2) with I1 = int_0^Q F and
/// I2 = int_0^Q x F.
double profit_variance(const DemandDistribution& demand, double order_q, const CostStructure& k);

ProfitStats profit_stats(const DemandDistribution& demand, double order_q, const CostStructure& k);

/// Order quantity with F(Q*) equal to the critical fractile, to 1e-9.
double classical_optimal_q(const DemandDistribution& demand, const CostStructure& k);

/// Sample mean and variance of the profit over a batch of demand draws.
struct SampleProfit {
  double mean = 0.0;
  double variance = 0.0;  ///< unbiased
  long long draws = 0;
};

SampleProfit sample_profit(std::span<const double> demand_draws, double order_q, const CostStructure& k);

}  // namespace fuzzynv
