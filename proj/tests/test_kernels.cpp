#include <doctest.h>

#include <bit>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "fuzzynv/kernels.hpp"
#include "fuzzynv/philox.hpp"

using namespace fuzzynv;
using namespace fuzzynv::kernels;

namespace {

std::int64_t ulp_distance(double a, double b) {
  const auto ia = std::bit_cast<std::int64_t>(a), ib = std::bit_cast<std::int64_t>(b);
  return ia > ib ? ia - ib : ib - ia;
}

std::vector<double> normals(std::size_t n, double mu, double sigma, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> z(mu, sigma);
  std::vector<double> v(n);
  for (auto& x : v) x = z(rng);
  return v;
}

// Sizes that exercise empty input, pure tails and every remainder mod 4.
const std::size_t kSizes[] = {0, 1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17, 1000, 1003};

}  // namespace

TEST_CASE("backend selection") {
  const Backend b = active_backend();
  CHECK((b == Backend::scalar || b == Backend::avx2));
  if (!avx2_available()) CHECK(b == Backend::scalar);
  CHECK(to_string(Backend::scalar) == "scalar");
  CHECK(to_string(Backend::avx2) == "avx2");
}

TEST_CASE("profit sums: scalar reference") {
  const std::vector<double> d{5.0, 20.0, 10.0};
  const ProfitSums s = profit_sums(d, 10.0, {45.0, -5.0, 40.0}, Backend::scalar);
  CHECK(s.sum == doctest::Approx(175.0 + 400.0 + 400.0));
  CHECK(s.sum_sq == doctest::Approx(175.0 * 175.0 + 2 * 400.0 * 400.0));
}

TEST_CASE("kernel equivalence between backends") {
  if (!avx2_available()) {
    MESSAGE("AVX2 not available; equivalence test skipped");
    return;
  }
  for (std::size_t n : kSizes) {
    CAPTURE(n);
    const auto x = normals(n, 120.0, 60.0, 100 + n);

    const ProfitSums a = profit_sums(x, 110.0, {45.0, -5.0, 40.0}, Backend::scalar);
    const ProfitSums b = profit_sums(x, 110.0, {45.0, -5.0, 40.0}, Backend::avx2);
    CHECK(a.sum == b.sum);
    CHECK(a.sum_sq == b.sum_sq);

    std::vector<double> pa(n), pb(n);
    gaussian_pdf(x, 100.0, 20.0, pa, Backend::scalar);
    gaussian_pdf(x, 100.0, 20.0, pb, Backend::avx2);
    for (std::size_t i = 0; i < n; ++i) {
      CAPTURE(x[i]);
      // The vector exponential is a polynomial, not libm: a few ulp apart.
      if (pa[i] > 1e-300) CHECK(ulp_distance(pa[i], pb[i]) <= 4);
      else CHECK(std::abs(pa[i] - pb[i]) <= 1e-300);
    }

    std::vector<double> F1(n), F2(n), f1(n), f2(n);
    for (std::size_t i = 0; i < n; ++i) {
      F1[i] = 0.5 * std::erfc(-(x[i] - 200.0) / (30.0 * std::sqrt(2.0)));
      F2[i] = 0.5 * std::erfc(-(x[i] - 100.0) / (20.0 * std::sqrt(2.0)));
    }
    gaussian_pdf(x, 200.0, 30.0, f1, Backend::scalar);
    gaussian_pdf(x, 100.0, 20.0, f2, Backend::scalar);
    std::vector<double> ca(n), cb(n), da(n), db(n);
    defuzzified_columns({F1, F2, f1, f2}, 0.12, 0.43, 1.02, 0.3, ca, da, Backend::scalar);
    defuzzified_columns({F1, F2, f1, f2}, 0.12, 0.43, 1.02, 0.3, cb, db, Backend::avx2);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(ca[i] == cb[i]);
      CHECK(da[i] == db[i]);
    }

    std::vector<double> q1(n), q2(n);
    std::mt19937_64 rng(n);
    std::uniform_real_distribution<double> u(0.0, 5.0);
    for (std::size_t i = 0; i < n; ++i) {
      q1[i] = std::round(u(rng) * 4.0) / 4.0;  // quarter stars, so ties with m occur
      q2[i] = std::max(q1[i], std::round(u(rng) * 4.0) / 4.0);
    }
    for (double m : {0.0, 1.5, 2.5, 3.5, 5.0}) {
      const ClassCounts s = classify_inclinations(q1, q2, m, Backend::scalar);
      const ClassCounts v = classify_inclinations(q1, q2, m, Backend::avx2);
      CHECK(s.n0 == v.n0);
      CHECK(s.n1 == v.n1);
      CHECK(s.n2 == v.n2);
      CHECK(s.n0 + s.n1 + s.n2 == static_cast<std::int64_t>(n));
    }
  }
}

TEST_CASE("classification boundaries") {
  const std::vector<double> q1{1.0, 2.0, 3.0, 3.5, 3.5};
  const std::vector<double> q2{2.0, 3.5, 4.0, 3.5, 4.0};
  // q2 <= m orders outright; q1 <= m < q2 hesitates; equality at q1 counts as hesitant.
  const ClassCounts c = classify_inclinations(q1, q2, 3.5, Backend::scalar);
  CHECK(c.n1 == 3);
  CHECK(c.n2 == 2);
  CHECK(c.n0 == 0);
  const ClassCounts none = classify_inclinations(q1, q2, 0.5, Backend::scalar);
  CHECK(none.n0 == 5);
}

TEST_CASE("gaussian pdf scalar reference") {
  const std::vector<double> x{-1e3, 60.0, 100.0, 140.0, 1e3};
  std::vector<double> out(x.size());
  gaussian_pdf(x, 100.0, 20.0, out, Backend::scalar);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double z = (x[i] - 100.0) / 20.0;
    CHECK(out[i] == doctest::Approx(std::exp(-0.5 * z * z) / (20.0 * std::sqrt(2.0 * M_PI))).epsilon(1e-14));
  }
}

TEST_CASE("Philox4x32-10 known-answer vectors") {
  using P = Philox4x32;
  CHECK(P::block({0, 0, 0, 0}, {0, 0}) == P::Counter{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
  CHECK(P::block({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, {0xffffffffu, 0xffffffffu}) ==
        P::Counter{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
  CHECK(P::block({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, {0xa4093822u, 0x299f31d0u}) ==
        P::Counter{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("Philox normal pairs") {
  using P = Philox4x32;
  const auto key = P::key_from_seed(42);
  double sum = 0.0, sum_sq = 0.0;
  const int n = 200000;
  for (int i = 0; i < n / 2; ++i) {
    const auto [a, b] = P::normal_pair({static_cast<std::uint32_t>(i), 0, 0, 0}, key);
    sum += a + b;
    sum_sq += a * a + b * b;
  }
  CHECK(std::abs(sum / n) < 0.01);
  CHECK(std::abs(sum_sq / n - 1.0) < 0.02);
  CHECK(P::to_open_unit(0, 0) > 0.0);
  CHECK(P::to_open_unit(0xffffffffu, 0xffffffffu) < 1.0);
  // Same counter and key, same draw.
  CHECK(P::normal_pair({7, 0, 0, 0}, key) == P::normal_pair({7, 0, 0, 0}, key));
  CHECK(P::normal_pair({7, 0, 0, 0}, key) != P::normal_pair({8, 0, 0, 0}, key));
}
