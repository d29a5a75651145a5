#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "fuzzynv/review_sim.hpp"

using namespace fuzzynv;

namespace {

// Straight transcription of the weight formulas, used as the oracle.
std::array<double, 4> hand_legs(double ric, double n1r, double n2r, double n1p, double n2p) {
  const double p0 = (n1r + n2r) / (ric + n1r + n2r);
  const double n = ric + n1r + n2r + n1p + n2p;
  const double a = 4.0 * n * p0 / (4.0 * n1r + 3.0 * n2r + 2.0 * n1p + n2p);
  const double p2 = a * (n1r + n2r) / n;
  return {a * n1r / n, p2, p2 + a * n1p / n, p2 + a * (n1p + n2p) / n};
}

OrderCounts counts(std::int64_t ric, std::int64_t n1r, std::int64_t n2r, std::int64_t n1p,
                   std::int64_t n2p) {
  OrderCounts c;
  c.n_ric = ric;
  c.n1_rsc = n1r;
  c.n2_rsc = n2r;
  c.n1_p = n1p;
  c.n2_p = n2p;
  return c;
}

}  // namespace

TEST_CASE("derived weight from fixed counts") {
  const OrderCounts c = counts(2400, 4710, 868, 618, 954);
  const DerivedWeight w = derive_fuzzy_weight(c);
  const auto expect = hand_legs(2400, 4710, 868, 618, 954);
  CHECK(w.p0 == doctest::Approx(5578.0 / 7978.0).epsilon(1e-15));
  for (int i = 0; i < 4; ++i) CHECK(w.p_tilde.legs()[i] == doctest::Approx(expect[i]).epsilon(1e-14));
  CHECK(w.p_tilde.r1() == doctest::Approx(0.557).epsilon(2e-3));
  CHECK(w.p_tilde.r4() == doctest::Approx(0.846).epsilon(2e-3));
}

TEST_CASE("defuzzification identity holds for random counts") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::int64_t> u(0, 5000);
  int checked = 0;
  for (int t = 0; t < 2000; ++t) {
    const OrderCounts c = counts(u(rng), u(rng), u(rng), u(rng), u(rng));
    const WeightLegs w = compute_weight_legs(c);
    if (w.status == WeightStatus::undefined_p0) continue;
    const auto& p = w.legs;
    CHECK(p[0] <= p[1]);
    CHECK(p[1] <= p[2]);
    CHECK(p[2] <= p[3]);
    CHECK(p[0] >= 0.0);
    CHECK(std::abs((p[0] + p[1] + p[2] + p[3]) / 4.0 - w.p0) <= 1e-12);
    CHECK((w.status == WeightStatus::out_of_range) == (p[3] > 1.0));
    ++checked;
  }
  CHECK(checked > 1900);
}

TEST_CASE("degenerate counts") {
  SUBCASE("no review-sensitive orders gives the zero weight") {
    const DerivedWeight w = derive_fuzzy_weight(counts(100, 0, 0, 30, 40));
    CHECK(w.p0 == 0.0);
    CHECK(w.p_tilde == TrapezoidalFuzzyNumber::crisp(0.0));
  }
  SUBCASE("no ordering customers leaves p0 undefined") {
    CHECK(compute_weight_legs(counts(0, 0, 0, 10, 10)).status == WeightStatus::undefined_p0);
    try {
      derive_fuzzy_weight(counts(0, 0, 0, 10, 10));
      FAIL("expected a throw");
    } catch (const WeightDerivationError& e) {
      CHECK(e.status() == WeightStatus::undefined_p0);
    }
  }
  SUBCASE("weight above one is rejected") {
    // Only hesitant customers and prospects who order outright push p4 past 1.
    const OrderCounts c = counts(0, 0, 10, 10, 0);
    const WeightLegs w = compute_weight_legs(c);
    CHECK(w.status == WeightStatus::out_of_range);
    CHECK(w.legs[3] > 1.0);
    CHECK_THROWS_AS(derive_fuzzy_weight(c), WeightDerivationError);
  }
  CHECK(to_string(WeightStatus::ok) == "ok");
  CHECK(to_string(WeightStatus::undefined_p0) == "undefined_p0");
  CHECK(to_string(WeightStatus::out_of_range) == "out_of_range");
}

TEST_CASE("population split and validation") {
  PopulationConfig cfg;
  const PopulationSplit s = split_population(cfg);
  CHECK(s.n_prospects == 2000);
  CHECK(s.n_customers == 8000);
  CHECK(s.n_ric == 2400);
  CHECK(s.n_rsc == 5600);

  auto bad = cfg;
  bad.n_visitors = 0;
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
  bad = cfg;
  bad.mean_rating = 5.5;
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
  bad = cfg;
  bad.q_std = 0.0;
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
  bad = cfg;
  bad.prospect_fraction = -0.1;
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
  bad = cfg;
  bad.rsc_q_means = {3.5, 4.5};
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
}

TEST_CASE("inclination draws") {
  PopulationConfig cfg;
  const InclinationDraws d = draw_inclinations(cfg);
  REQUIRE(d.rsc_q1.size() == 5600);
  REQUIRE(d.prospect_q1.size() == 2000);
  for (std::size_t i = 0; i < d.rsc_q1.size(); ++i) {
    CHECK(d.rsc_q1[i] >= 0.0);
    CHECK(d.rsc_q2[i] <= 5.0);
  }
  double mean = 0.0;
  for (double q : d.prospect_q2) mean += q;
  mean /= static_cast<double>(d.prospect_q2.size());
  CHECK(mean == doctest::Approx(4.0).epsilon(0.05));

  const InclinationDraws again = draw_inclinations(cfg);
  CHECK(again.rsc_q2 == d.rsc_q2);
  cfg.seed = 2;
  CHECK(draw_inclinations(cfg).rsc_q2 != d.rsc_q2);
}

TEST_CASE("simulated order shares") {
  // Expected shares for independent N(1.5,1), N(2.5,1) at m = 3.5: P(q2 <= m) = Phi(1) = 0.841;
  // for prospects N(3,1), N(4,1): P(q1 <= m < q2) = Phi(0.5) (1 - Phi(-0.5)) = 0.691 * 0.691 = 0.477.
  const OrderCounts c = simulate_visitors(PopulationConfig{});
  const double rsc = static_cast<double>(c.n0_rsc + c.n1_rsc + c.n2_rsc);
  const double pro = static_cast<double>(c.n0_p + c.n1_p + c.n2_p);
  CHECK(c.n_ric == 2400);
  CHECK(rsc == 5600.0);
  CHECK(pro == 2000.0);
  CHECK(std::abs(c.n1_rsc / rsc - 0.841) <= 0.02);
  CHECK(std::abs(c.n2_p / pro - 0.477) <= 0.02);
  CHECK(simulate_visitors(PopulationConfig{}) == c);

  PopulationConfig zero;
  zero.mean_rating = 0.0;
  const OrderCounts z = simulate_visitors(zero);
  // Draws are clamped at 0, so only visitors with an inclination clamped to 0 order:
  // 1 - (1 - Phi(-1.5)) (1 - Phi(-2.5)) = 0.0726 of rs-customers.
  CHECK(std::abs((z.n1_rsc + z.n2_rsc) / 5600.0 - 0.0726) <= 0.01);
  CHECK(z.n_ric == 2400);
}

TEST_CASE("rating sweep") {
  PopulationConfig cfg;
  std::vector<double> grid;
  for (int i = 0; i <= 400; ++i) grid.push_back(0.5 + 0.01 * i);
  const auto rows = rating_sweep(cfg, grid);
  REQUIRE(rows.size() == 401);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    // Raising the rating never turns an order into a non-order.
    CHECK(rows[i].counts.n0_rsc <= rows[i - 1].counts.n0_rsc);
    CHECK(rows[i].counts.n0_p <= rows[i - 1].counts.n0_p);
  }
  const std::size_t at35 = 300;
  CHECK(rows[at35].mean_rating == doctest::Approx(3.5));
  cfg.mean_rating = rows[at35].mean_rating;
  CHECK(rows[at35].counts == simulate_visitors(cfg));

  const std::vector<double> bad{-0.1};
  CHECK_THROWS_AS(rating_sweep(cfg, bad), InvalidArgument);
}
