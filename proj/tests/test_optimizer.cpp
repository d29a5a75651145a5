#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "fuzzynv/diagnostics.hpp"
#include "fuzzynv/error.hpp"
#include "fuzzynv/optimizer.hpp"
#include "fuzzynv/quadrature.hpp"
#include "fuzzynv/verification/oracles.hpp"

using namespace fuzzynv;
using namespace fuzzynv::verification;
using doctest::Approx;

namespace {

const GaussianComponent kC1(200.0, 30.0);
const GaussianComponent kC2(100.0, 20.0);
const Components kRef{200.0, 30.0, 100.0, 20.0};
const CostStructure kHigh(10.0, 50.0, 5.0);
const CostStructure kLow(10.0, 12.0, 5.0);
const TrapezoidalFuzzyNumber kCase1 = TrapezoidalFuzzyNumber::weight(0.1, 0.2, 0.4, 0.4);

struct Instance {
  TrapezoidalFuzzyNumber p;
  CostStructure k;
  GaussianComponent c1, c2;
};

Instance random_instance(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::array<double, 4> p{u(rng), u(rng), u(rng), u(rng)};
  std::sort(p.begin(), p.end());
  const double V = 1.0 + 8.0 * u(rng);
  const double M = 10.5 + 40.0 * u(rng);
  return {TrapezoidalFuzzyNumber::weight(p), CostStructure(10.0, M, V),
          GaussianComponent(150.0 + 100.0 * u(rng), 15.0 + 25.0 * u(rng)),
          GaussianComponent(80.0 + 40.0 * u(rng), 10.0 + 10.0 * u(rng))};
}

double mean_weight_oracle(double fractile) {
  return ref_bisect([](double x) { return ref_mixture_cdf(x, 0.275, kRef); }, fractile, 0.0, 500.0);
}

}  // namespace

TEST_CASE("crisp and mean-weight order quantities") {
  const double high = optimal_q_mean_weight(kCase1, kC1, kC2, kHigh);
  const double low = optimal_q_mean_weight(kCase1, kC1, kC2, kLow);
  CHECK(high == Approx(mean_weight_oracle(8.0 / 9.0)).epsilon(1e-10));
  CHECK(low == Approx(mean_weight_oracle(2.0 / 7.0)).epsilon(1e-10));
  CHECK(std::abs(high - 207.287) <= 1e-3);
  CHECK(std::abs(low - 94.622) <= 1e-3);
  CHECK(optimal_q_mean_weight(TrapezoidalFuzzyNumber::crisp(1.0), kC1, kC2, kHigh) ==
        Approx(kC1.quantile(8.0 / 9.0)).epsilon(1e-12));
  CHECK(optimal_q_crisp_weight(0.0, kC1, kC2, kHigh) == Approx(kC2.quantile(8.0 / 9.0)).epsilon(1e-12));
}

TEST_CASE("uniform-weight order quantity") {
  CHECK(optimal_q_uniform(0.3, 0.3, kC1, kC2, kLow) == Approx(optimal_q_crisp_weight(0.3, kC1, kC2, kLow)));
  CHECK(optimal_q_uniform(0.2, 0.8, kC1, kC2, kHigh) ==
        Approx(optimal_q_crisp_weight(0.5, kC1, kC2, kHigh)).epsilon(1e-10));
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    double pm = u(rng), pM = u(rng);
    if (pm > pM) std::swap(pm, pM);
    const CostStructure& k = i % 2 ? kHigh : kLow;
    const double a = optimal_q_mean_weight(TrapezoidalFuzzyNumber::weight(pm, pm, pM, pM), kC1, kC2, k);
    CHECK(std::abs(a - optimal_q_uniform(pm, pM, kC1, kC2, k)) <= 1e-6);
  }
  CHECK_THROWS_AS(optimal_q_uniform(0.6, 0.4, kC1, kC2, kHigh), InvalidArgument);
  CHECK_THROWS_AS(optimal_q_uniform(-0.1, 0.4, kC1, kC2, kHigh), InvalidArgument);
}

TEST_CASE("fuzzy order quantity") {
  const ScopedWarningHandler quiet([](std::string_view) {});
  SUBCASE("beta = 1/2 coincides with the mean weight") {
    for (const CostStructure& k : {kHigh, kLow}) {
      const double q = optimal_q_beta(DefuzzifiedDemand(kCase1, RiskFactor(0.5), kC1, kC2), k);
      CHECK(q == Approx(optimal_q_mean_weight(kCase1, kC1, kC2, k)).epsilon(1e-10));
    }
    const auto crisp = TrapezoidalFuzzyNumber::crisp(0.4);
    CHECK(optimal_q_beta(DefuzzifiedDemand(crisp, RiskFactor(0.5), kC1, kC2), kHigh) ==
          Approx(optimal_q_crisp_weight(0.4, kC1, kC2, kHigh)).epsilon(1e-10));
  }
  SUBCASE("beta = 1 solves H/2 = fractile") {
    const DefuzzifiedDemand d(kCase1, RiskFactor(1.0), kC1, kC2);
    const double q = optimal_q_beta(d, kHigh);
    CHECK(0.5 * d.ghj(q).H == Approx(8.0 / 9.0).epsilon(1e-9));
  }
  SUBCASE("combined derivative vanishes at the optimum") {
    std::mt19937_64 rng(22);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 20; ++i) {
      const Instance in = random_instance(rng);
      const DefuzzifiedDemand d(in.p, RiskFactor(u(rng)), in.c1, in.c2);
      CHECK(std::abs(combined_objective_derivative(optimal_q_beta(d, in.k), d, in.k)) <= 1e-7);
      for (Side side : {Side::left, Side::right}) {
        const DefuzzifiedDemand leg = d.with_beta(RiskFactor(side == Side::left ? 0.0 : 1.0));
        CHECK(std::abs(objective_derivative(side, optimal_q_beta(leg, in.k), leg, in.k)) <= 1e-7);
      }
    }
  }
}

TEST_CASE("order quantity and optimal profit increase with beta") {
  // Some random instances put a little mass below zero; that warning is expected here.
  const ScopedWarningHandler quiet([](std::string_view) {});
  std::mt19937_64 rng(23);
  for (int i = 0; i < 20; ++i) {
    const Instance in = random_instance(rng);
    double prev_q = -1e300, prev_e = -1e300;
    for (int b = 0; b <= 20; ++b) {
      const DefuzzifiedDemand d(in.p, RiskFactor(b / 20.0), in.c1, in.c2);
      const auto dist = DemandDistribution::of(d);
      const double q = optimal_q_beta(d, in.k);
      const double e = expected_profit(dist, q, in.k);
      CHECK(q >= prev_q);
      if (in.p.r1() < in.p.r4()) CHECK(e > prev_e);
      prev_q = q;
      prev_e = e;

      // Envelope slope: d/dbeta E[profit](Q*) = (M - V) int_0^Q* (J - H).
      if (b > 0 && b < 20) {
        constexpr double db = 1e-4;
        const auto at = [&](double beta) {
          const DefuzzifiedDemand db_d = d.with_beta(RiskFactor(beta));
          return expected_profit(DemandDistribution::of(db_d), optimal_q_beta(db_d, in.k), in.k);
        };
        const double fd = (at(b / 20.0 + db) - at(b / 20.0 - db)) / (2.0 * db);
        const double slope =
            in.k.A() * integrate([&](double x) { const auto v = d.ghj(x); return v.J - v.H; }, 0.0, q, 1e-12);
        CHECK(fd == Approx(slope).epsilon(1e-3));
      }
    }
  }
}

TEST_CASE("objective derivative limits") {
  const DefuzzifiedDemand d(kCase1, RiskFactor(0.3), kC1, kC2);
  for (Side side : {Side::left, Side::right}) {
    CHECK(objective_derivative(side, -1e4, d, kHigh) == Approx(40.0).epsilon(1e-15));
    CHECK(objective_derivative(side, 1e4, d, kHigh) == Approx(-5.0).epsilon(1e-15));
    // Simplified forms: left (M-C) - (M-V)(J - H/2), right (M-C) - (M-V) H/2.
    for (double q : {120.0, 180.0, 230.0}) {
      const auto v = d.ghj(q);
      const double expect = side == Side::left ? 40.0 - 45.0 * (v.J - 0.5 * v.H) : 40.0 - 45.0 * 0.5 * v.H;
      CHECK(objective_derivative(side, q, d, kHigh) == Approx(expect).epsilon(1e-12));
    }
  }
}

TEST_CASE("two-dimensional oracle of the leg expectations") {
  const DefuzzifiedDemand d(kCase1, RiskFactor(0.5), kC1, kC2);
  SUBCASE("finite differences match the closed-form derivative") {
    std::mt19937_64 rng(24);
    std::uniform_real_distribution<double> u(d.quantile(0.05), d.quantile(0.95));
    for (int i = 0; i < 10; ++i) {
      const double q = u(rng);
      for (Side side : {Side::left, Side::right}) {
        constexpr double h = 1e-3;
        const double fd = (fuzzy_profit_leg_expectation(side, q + h, d, kLow) -
                           fuzzy_profit_leg_expectation(side, q - h, d, kLow)) /
                          (2.0 * h);
        CHECK(fd == Approx(objective_derivative(side, q, d, kLow)).epsilon(1e-3));
      }
    }
  }
  SUBCASE("the beta-combined legs equal the expected profit under the defuzzified demand") {
    // The left leg is the expected profit of the smaller draw, the right leg
    // that of the larger one, and the defuzzified CDF mixes them with weight beta.
    for (double q : {90.0, 150.0}) {
      const double legs = 0.7 * fuzzy_profit_leg_expectation(Side::left, q, d, kHigh) +
                          0.3 * fuzzy_profit_leg_expectation(Side::right, q, d, kHigh);
      const double direct = ref_direct_expected_profit(
          [](double x) { return ref_defuzzified_pdf(x, {0.1, 0.2, 0.4, 0.4}, 0.3, kRef); },
          [](double x) { return ref_defuzzified_cdf(x, {0.1, 0.2, 0.4, 0.4}, 0.3, kRef); }, -200.0, q, kHigh);
      CHECK(legs == Approx(direct).epsilon(1e-9));
    }
  }
  SUBCASE("grid maximum of the combined objective sits at the optimum") {
    const DefuzzifiedDemand d3 = d.with_beta(RiskFactor(0.3));
    const double q_star = optimal_q_beta(d3, kHigh);
    double best_q = 0.0, best = -1e300;
    for (double q = std::floor(q_star) - 3.0; q <= std::floor(q_star) + 3.0; q += 0.25) {
      const double v = 0.7 * fuzzy_profit_leg_expectation(Side::left, q, d3, kHigh) +
                       0.3 * fuzzy_profit_leg_expectation(Side::right, q, d3, kHigh);
      if (v > best) {
        best = v;
        best_q = q;
      }
    }
    CHECK(std::abs(best_q - q_star) <= 0.25);
  }
}

TEST_CASE("crossover quantity") {
  CHECK(crossover_quantity(100.0, 150.0, kHigh) == Approx(105.5556).epsilon(1e-6));
  CHECK(std::abs(crossover_quantity(100.0, 150.0, kHigh) - 105.56) <= 0.01);
  CHECK(crossover_quantity(100.0, 100.0 + 1e-9, kHigh) == Approx(100.0 + 1e-9 * 5.0 / 45.0).epsilon(1e-14));
  const double q = crossover_quantity(80.0, 120.0, kLow);
  CHECK(q >= 80.0);
  CHECK(q <= 120.0);
  // At the crossover demand both orders earn the same profit.
  CHECK(profit(q, 80.0, kLow) == Approx(profit(q, 120.0, kLow)).epsilon(1e-12));
  CHECK_THROWS_AS(crossover_quantity(120.0, 80.0, kLow), InvalidArgument);
}

TEST_CASE("policy comparison") {
  const DefuzzifiedDemand d(kCase1, RiskFactor(0.8), kC1, kC2);
  const auto self = compare_policies(optimal_q_beta(d, kHigh), d, kHigh);
  REQUIRE(self.benefit_ratio);
  CHECK(*self.benefit_ratio == 0.0);
  CHECK(*self.variance_change == 0.0);

  const DefuzzifiedDemand half = d.with_beta(RiskFactor(0.5));
  const auto neutral = compare_policies(optimal_q_mean_weight(kCase1, kC1, kC2, kLow), half, kLow);
  REQUIRE(neutral.benefit_ratio);
  CHECK(std::abs(*neutral.benefit_ratio) <= 1e-9);

  for (double beta : {0.0, 0.2, 0.8, 1.0}) {
    const DefuzzifiedDemand db = d.with_beta(RiskFactor(beta));
    for (double p : {0.0, 1.0}) {
      for (const CostStructure& k : {kHigh, kLow}) {
        const auto c = compare_policies(optimal_q_crisp_weight(p, kC1, kC2, k), db, k);
        CHECK(c.expected_optimal >= c.expected_candidate - 1e-9);
        if (c.benefit_ratio) CHECK(*c.benefit_ratio >= -1e-9);
        if (!c.benefit_ratio) CHECK(c.expected_candidate <= 0.0);
      }
    }
  }
}
