#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "fuzzynv/diagnostics.hpp"
#include "fuzzynv/error.hpp"
#include "fuzzynv/normal.hpp"
#include "fuzzynv/quadrature.hpp"
#include "fuzzynv/roots.hpp"
#include "fuzzynv/verification/oracles.hpp"

using namespace fuzzynv;
using doctest::Approx;

TEST_CASE("erf and erfc against the C library") {
  for (double x = -6.0; x <= 6.0; x += 0.01) {
    CHECK(std::abs(erf_series_cf(x) - std::erf(x)) <= 2e-15);
    CHECK(erfc_series_cf(x) == Approx(std::erfc(x)).epsilon(1e-13));
  }
  // Deep upper tail keeps relative accuracy.
  for (double x : {8.0, 12.0, 20.0, 26.0}) CHECK(erfc_series_cf(x) == Approx(std::erfc(x)).epsilon(1e-13));
}

TEST_CASE("normal cdf") {
  const GaussianComponent g(100.0, 20.0);
  CHECK(g.cdf(100.0) == 0.5);
  CHECK(g.cdf(120.0) == Approx(0.841345).epsilon(1e-6));
  CHECK(g.cdf(-std::numeric_limits<double>::infinity()) == 0.0);
  CHECK(g.cdf(std::numeric_limits<double>::infinity()) == 1.0);
  for (double x = -100.0; x <= 300.0; x += 0.5) {
    CHECK(g.cdf(x) == Approx(verification::ref_normal_cdf(x, 100.0, 20.0)).epsilon(1e-13));
    CHECK(g.sf(x) == Approx(verification::ref_normal_cdf(-x, -100.0, 20.0)).epsilon(1e-13));
    CHECK(g.pdf(x) == Approx(verification::ref_normal_pdf(x, 100.0, 20.0)).epsilon(1e-13));
  }
  CHECK_THROWS_AS(GaussianComponent(0.0, 0.0), InvalidArgument);
  CHECK_THROWS_AS(GaussianComponent(0.0, -1.0), InvalidArgument);
}

TEST_CASE("normal quantile") {
  const GaussianComponent g(100.0, 20.0);
  CHECK(g.quantile(0.5) == Approx(100.0).epsilon(1e-14));
  CHECK(std::abs(g.quantile(0.841345) - 120.0) <= 1e-4);  // 0.841345 is Phi(1) rounded to 6 places
  CHECK(std::abs(g.quantile(g.cdf(120.0)) - 120.0) <= 1e-6);
  const double oracle =
      verification::ref_bisect([](double z) { return verification::ref_normal_cdf(z, 0.0, 1.0); }, 0.888889, -10, 10);
  CHECK(std::abs(standard_normal_quantile(0.888889) - 1.22064) <= 1e-4);
  CHECK(standard_normal_quantile(0.888889) == Approx(oracle).epsilon(1e-12));
  for (double u : {1e-300, 1e-12, 1e-6, 0.01, 0.3, 0.7, 0.99, 1 - 1e-9}) {
    CHECK(standard_normal_cdf(standard_normal_quantile(u)) == Approx(u).epsilon(1e-12));
  }
  CHECK_THROWS_AS(standard_normal_quantile(0.0), InvalidArgument);
  CHECK_THROWS_AS(standard_normal_quantile(1.0), InvalidArgument);
}

TEST_CASE("adaptive simpson") {
  const auto r = adaptive_simpson([](double x) { return std::exp(-x * x); }, -10.0, 10.0, 1e-12);
  CHECK(r.converged);
  CHECK(r.value == Approx(std::sqrt(std::numbers::pi)).epsilon(1e-12));
  CHECK(integrate([](double x) { return x * x; }, 0.0, 3.0, 1e-12) == Approx(9.0).epsilon(1e-14));
  CHECK(integrate([](double) { return 1.0; }, 2.0, 2.0, 1e-12) == 0.0);
  // A kink and a narrow peak are both resolved.
  CHECK(integrate([](double x) { return std::abs(x - 0.3); }, 0.0, 1.0, 1e-12) == Approx(0.29).epsilon(1e-12));
  CHECK(integrate([](double x) { return std::exp(-1e4 * (x - 0.5) * (x - 0.5)); }, 0.0, 1.0, 1e-12) ==
        Approx(std::sqrt(std::numbers::pi / 1e4)).epsilon(1e-10));
}

TEST_CASE("quadrature failure reports a residual") {
  // 1/sqrt|x| has an integrable singularity that the depth limit cannot resolve to 1e-15.
  try {
    integrate([](double x) { return x == 0.0 ? 1e300 : 1.0 / std::sqrt(std::abs(x)); }, -1.0, 1.0, 1e-15, "singular");
    FAIL("expected NumericalError");
  } catch (const NumericalError& e) {
    CHECK(e.residual() > 0.0);
  }
}

TEST_CASE("invert_cdf") {
  const GaussianComponent g(100.0, 20.0);
  const auto cdf = [&](double x) { return g.cdf(x); };
  const auto pdf = [&](double x) { return g.pdf(x); };
  CHECK(invert_cdf(cdf, pdf, 0.5, {50.0, 150.0}) == Approx(100.0).epsilon(1e-12));
  // Bracket that misses the root is widened.
  CHECK(invert_cdf(cdf, pdf, 0.999, {0.0, 110.0}) == Approx(g.quantile(0.999)).epsilon(1e-10));
  // Works without a density.
  CHECK(invert_cdf(cdf, {}, 0.2, {0.0, 200.0}) == Approx(g.quantile(0.2)).epsilon(1e-10));
  // A flat CDF that never reaches the target cannot be bracketed.
  CHECK_THROWS_AS(invert_cdf([](double) { return 0.3; }, {}, 0.5, {0.0, 1.0}), NumericalError);
}

TEST_CASE("warning handler is scoped") {
  std::string seen;
  {
    ScopedWarningHandler h([&](std::string_view m) { seen = m; });
    warn("hello");
  }
  CHECK(seen == "hello");
}
