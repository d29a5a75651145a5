#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "fuzzynv/error.hpp"
#include "fuzzynv/newsvendor.hpp"
#include "fuzzynv/verification/oracles.hpp"

using namespace fuzzynv;
using namespace fuzzynv::verification;
using doctest::Approx;

namespace {

const CostStructure kHigh(10.0, 50.0, 5.0);
const CostStructure kLow(10.0, 12.0, 5.0);
const GaussianComponent kNormal(100.0, 20.0);

}  // namespace

TEST_CASE("profit") {
  CHECK(profit(5.0, 10.0, kHigh) == Approx(175.0));
  CHECK(profit(5.0, 10.0, kHigh) == Approx(5 * 50 + 5 * 5 - 10 * 10));
  CHECK(profit(20.0, 10.0, kHigh) == Approx(400.0));
  CHECK(profit(10.0, 10.0, kHigh) == Approx(400.0));
  CHECK(profit(std::nextafter(10.0, 0.0), 10.0, kHigh) == Approx(400.0));
}

TEST_CASE("cost structure") {
  CHECK(kHigh.critical_fractile() == Approx(40.0 / 45.0).epsilon(1e-15));
  CHECK(kHigh.critical_fractile() == Approx(0.888889).epsilon(1e-6));
  CHECK(kLow.critical_fractile() == Approx(2.0 / 7.0).epsilon(1e-15));
  CHECK(CostStructure(10.0, 50.0, 10.0 - 1e-9).critical_fractile() < 1.0);
  CHECK(CostStructure(10.0, 50.0, 10.0 - 1e-9).critical_fractile() > 1.0 - 1e-10);
  CHECK(kHigh.A() == 45.0);
  CHECK(kHigh.a() == -5.0);
  CHECK(kHigh.b() == 40.0);
  CHECK_THROWS_AS(CostStructure(10.0, 50.0, 10.0), InvalidArgument);
  CHECK_THROWS_AS(CostStructure(10.0, 10.0, 5.0), InvalidArgument);
  CHECK_THROWS_AS(CostStructure(10.0, NAN, 5.0), InvalidArgument);
}

TEST_CASE("expected profit") {
  const auto dist = DemandDistribution::of(kNormal);
  CHECK(expected_profit(dist, 0.0, kHigh) == 0.0);
  CHECK(profit_variance(dist, 0.0, kHigh) == 0.0);
  CHECK_THROWS_AS(expected_profit(dist, -1.0, kHigh), InvalidArgument);

  // Direct two-branch integral from -10 sigma; the closed form starts at 0,
  // which differs by A * int_{-inf}^0 F (about 5e-5 here), hence a relative check.
  const double direct = ref_direct_expected_profit([](double x) { return ref_normal_pdf(x, 100.0, 20.0); },
                                                   [](double x) { return ref_normal_cdf(x, 100.0, 20.0); }, -100.0,
                                                   110.0, kHigh);
  const double closed = expected_profit(dist, 110.0, kHigh);
  CHECK(std::abs(closed - direct) <= 1e-6 * std::abs(direct));
}

TEST_CASE("profit moments against Monte Carlo") {
  std::mt19937_64 rng(20240607);
  std::normal_distribution<double> z(100.0, 20.0);
  const auto mc = ref_monte_carlo_profit([&] { return z(rng); }, 1'000'000, 110.0, kHigh);
  const auto s = profit_stats(DemandDistribution::of(kNormal), 110.0, kHigh);
  CHECK(std::abs(s.expected_profit - mc.mean) <= 3.0 * mc.se_mean);
  CHECK(std::abs(s.profit_variance - mc.variance) <= 3.0 * mc.se_variance);
}

TEST_CASE("profit variance grows with the order quantity") {
  const auto dist = DemandDistribution::of(kNormal);
  for (const CostStructure& k : {kHigh, kLow}) {
    double prev = -1.0;
    for (double q = 0.0; q <= 250.0; q += 5.0) {
      const double v = profit_variance(dist, q, k);
      CHECK(v >= prev);
      prev = v;
    }
  }
}

TEST_CASE("classical optimal order quantity") {
  const double q = classical_optimal_q(DemandDistribution::of(kNormal), kHigh);
  CHECK(std::abs(q - 124.41) <= 0.01);
  const double oracle = ref_bisect([](double x) { return ref_normal_cdf(x, 100.0, 20.0); }, 8.0 / 9.0, 0.0, 300.0);
  CHECK(q == Approx(oracle).epsilon(1e-10));
  CHECK(classical_optimal_q(DemandDistribution::of(kNormal), CostStructure(10.0, 15.0, 5.0)) ==
        Approx(100.0).epsilon(1e-12));

  SUBCASE("mean-weight mixture") {
    const GmmDemand g(GaussianComponent(200.0, 30.0), kNormal, 0.275);
    const Components c{200.0, 30.0, 100.0, 20.0};
    // The bisection oracle puts this quantity at 207.287 (not 206.9).
    const double ref = ref_bisect([&](double x) { return ref_mixture_cdf(x, 0.275, c); }, 8.0 / 9.0, 0.0, 400.0);
    const double got = classical_optimal_q(DemandDistribution::of(g), kHigh);
    CHECK(got == Approx(ref).epsilon(1e-10));
    CHECK(std::abs(got - 207.287) <= 1e-3);
  }
  SUBCASE("a CDF-only distribution is inverted numerically") {
    const DemandDistribution cdf_only([](double x) { return kNormal.cdf(x); }, {0.0, 200.0});
    CHECK(classical_optimal_q(cdf_only, kLow) == Approx(kNormal.quantile(2.0 / 7.0)).epsilon(1e-10));
  }
}

TEST_CASE("sample profit uses the batch kernel") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> z(100.0, 20.0);
  std::vector<double> draws(10007);
  for (auto& d : draws) d = z(rng);
  const SampleProfit s = sample_profit(draws, 105.0, kLow);
  double mean = 0.0;
  for (double d : draws) mean += profit(d, 105.0, kLow);
  mean /= static_cast<double>(draws.size());
  double var = 0.0;
  for (double d : draws) var += (profit(d, 105.0, kLow) - mean) * (profit(d, 105.0, kLow) - mean);
  var /= static_cast<double>(draws.size() - 1);
  CHECK(s.draws == 10007);
  CHECK(s.mean == Approx(mean).epsilon(1e-12));
  CHECK(s.variance == Approx(var).epsilon(1e-9));
  CHECK(sample_profit({}, 1.0, kLow).draws == 0);
}
