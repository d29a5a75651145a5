#include "fuzzynv/newsvendor.hpp"

#include <cmath>
#include <sstream>

#include "fuzzynv/error.hpp"
#include "fuzzynv/kernels.hpp"
#include "fuzzynv/quadrature.hpp"

namespace fuzzynv {
namespace {

constexpr double kProfitTolerance = 1e-10;
constexpr double kFractileTolerance = 1e-9;

void require_order(double order_q) {
  if (!(order_q >= 0.0) || !std::isfinite(order_q)) {
    std::ostringstream os;
    os << "order quantity must be finite and non-negative, got " << order_q;
    throw InvalidArgument(os.str());
  }
}

}  // namespace

CostStructure::CostStructure(double purchase_cost, double selling_price, double salvage_value)
    : C_(purchase_cost), M_(selling_price), V_(salvage_value) {
  if (!(std::isfinite(C_) && std::isfinite(M_) && std::isfinite(V_)) || !(V_ < C_ && C_ < M_)) {
    std::ostringstream os;
    os << "costs must satisfy V < C < M, got C = " << C_ << ", M = " << M_ << ", V = " << V_;
    throw InvalidArgument(os.str());
  }
}

DemandDistribution::DemandDistribution(Fn cdf, Bracket bracket, Fn pdf, Fn quantile)
    : cdf_(std::move(cdf)), pdf_(std::move(pdf)), quantile_(std::move(quantile)), bracket_(bracket) {
  if (!cdf_) throw InvalidArgument("demand distribution needs a CDF");
}

DemandDistribution DemandDistribution::of(const GaussianComponent& c) {
  return {[c](double x) { return c.cdf(x); },
          {c.mu() - 10.0 * c.sigma(), c.mu() + 10.0 * c.sigma()},
          [c](double x) { return c.pdf(x); },
          [c](double u) { return c.quantile(u); }};
}

DemandDistribution DemandDistribution::of(const GmmDemand& g) {
  return {[g](double x) { return g.cdf(x); }, effective_support(g.c1(), g.c2()),
          [g](double x) { return g.pdf(x); }};
}

DemandDistribution DemandDistribution::of(const DefuzzifiedDemand& d) {
  return {[d](double x) { return d.cdf(x); }, d.support(), [d](double x) { return d.pdf(x); }};
}

double profit(double demand, double order_q, const CostStructure& k) {
  return demand <= order_q ? k.A() * demand + k.a() * order_q : k.b() * order_q;
}

double expected_profit(const DemandDistribution& demand, double order_q, const CostStructure& k) {
  require_order(order_q);
  const double i1 = integrate(demand.cdf_fn(), 0.0, order_q, kProfitTolerance, "int_0^Q F");
  return (k.V() - k.M()) * i1 + (k.M() - k.C()) * order_q;
}

double profit_variance(const DemandDistribution& demand, double order_q, const CostStructure& k) {
  require_order(order_q);
  const auto& F = demand.cdf_fn();
  const double i1 = integrate(F, 0.0, order_q, kProfitTolerance, "int_0^Q F");
  const double i2 =
      integrate([&F](double x) { return x * F(x); }, 0.0, order_q, kProfitTolerance, "int_0^Q x F");
  const double spread = k.M() - k.V();
  return std::max(0.0, spread * spread * (2.0 * order_q * i1 - 2.0 * i2 - i1 * i1));
}

ProfitStats profit_stats(const DemandDistribution& demand, double order_q, const CostStructure& k) {
  return {order_q, expected_profit(demand, order_q, k), profit_variance(demand, order_q, k)};
}

double classical_optimal_q(const DemandDistribution& demand, const CostStructure& k) {
  const double target = k.critical_fractile();
  double q = 0.0;
  if (demand.has_quantile()) {
    q = demand.quantile(target);
  } else {
    q = invert_cdf(demand.cdf_fn(), demand.pdf_fn(), target, demand.bracket(), kFractileTolerance / 10);
  }
  const double residual = std::abs(demand.cdf(q) - target);
  if (residual > kFractileTolerance) {
    std::ostringstream os;
    os << "optimal order quantity solve left |F(Q) - fractile| = " << residual;
    throw NumericalError(os.str(), residual);
  }
  return q;
}

SampleProfit sample_profit(std::span<const double> demand_draws, double order_q, const CostStructure& k) {
  require_order(order_q);
  SampleProfit out;
  out.draws = static_cast<long long>(demand_draws.size());
  if (demand_draws.empty()) return out;
  const kernels::ProfitSums s = kernels::profit_sums(demand_draws, order_q, {k.A(), k.a(), k.b()});
  const double n = static_cast<double>(demand_draws.size());
  out.mean = s.sum / n;
  if (demand_draws.size() > 1) {
    out.variance = std::max(0.0, (s.sum_sq - n * out.mean * out.mean) / (n - 1.0));
  }
  return out;
}

}  // namespace fuzzynv
