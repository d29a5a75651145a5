// AVX2 + FMA variants of the kernels in kernels.hpp. This translation unit
// is compiled with -mavx2 -mfma -ffp-contract=off; it is only entered after a
// runtime CPU check. Arithmetic is written in the same order as the scalar
// reference so that profit_sums, defuzzified_columns and classify_inclinations
// agree bit for bit; gaussian_pdf differs by the exp approximation only.

#include "fuzzynv/kernels.hpp"

#if defined(__AVX2__) && defined(__FMA__)

#include <immintrin.h>

#include <cmath>
#include <numbers>

namespace fuzzynv::kernels::avx2 {
namespace {

inline double hsum_pairwise(__m256d v) {
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, v);
  return (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
}

// exp(x) for x in [-708, 709]: x = n ln2 + r with |r| <= ln2/2 (Cody-Waite
// split of ln2), exp(r) by a degree-13 Taylor polynomial, then scaling by 2^n
// through the exponent bits. Relative error ~2 ulp. Inputs below -708 return 0.
inline __m256d exp_pd(__m256d x) {
  const __m256d log2e = _mm256_set1_pd(1.4426950408889634074);
  const __m256d ln2_hi = _mm256_set1_pd(6.93147180369123816490e-01);
  const __m256d ln2_lo = _mm256_set1_pd(1.90821492927058770002e-10);
  const __m256d lo_limit = _mm256_set1_pd(-708.0);
  const __m256d hi_limit = _mm256_set1_pd(709.0);

  const __m256d underflow = _mm256_cmp_pd(x, lo_limit, _CMP_LT_OQ);
  x = _mm256_max_pd(_mm256_min_pd(x, hi_limit), lo_limit);

  const __m256d n = _mm256_round_pd(_mm256_mul_pd(x, log2e), _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(n, ln2_hi, x);
  r = _mm256_fnmadd_pd(n, ln2_lo, r);

  static constexpr double c[] = {
      1.0 / 6227020800.0, 1.0 / 479001600.0, 1.0 / 39916800.0, 1.0 / 3628800.0, 1.0 / 362880.0,
      1.0 / 40320.0,      1.0 / 5040.0,      1.0 / 720.0,      1.0 / 120.0,     1.0 / 24.0,
      1.0 / 6.0,          0.5,               1.0,              1.0};
  __m256d p = _mm256_set1_pd(c[0]);
  for (int i = 1; i < 14; ++i) p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(c[i]));

  // 2^n via the exponent field; n is within [-1022, 1023] after clamping.
  const __m128i ni = _mm256_cvtpd_epi32(n);
  const __m256i e = _mm256_slli_epi64(_mm256_add_epi64(_mm256_cvtepi32_epi64(ni), _mm256_set1_epi64x(1023)), 52);
  const __m256d scaled = _mm256_mul_pd(p, _mm256_castsi256_pd(e));
  return _mm256_andnot_pd(underflow, scaled);
}

}  // namespace

ProfitSums profit_sums(std::span<const double> demand, double order_q, ProfitCoefficients k) {
  const __m256d q = _mm256_set1_pd(order_q);
  const __m256d A = _mm256_set1_pd(k.A);
  const __m256d aq = _mm256_set1_pd(k.a * order_q);
  const double cap_s = k.b * order_q;
  const __m256d cap = _mm256_set1_pd(cap_s);
  __m256d s = _mm256_setzero_pd();
  __m256d s2 = _mm256_setzero_pd();
  std::size_t i = 0;
  const double* x = demand.data();
  for (; i + 4 <= demand.size(); i += 4) {
    const __m256d v = _mm256_loadu_pd(x + i);
    const __m256d under = _mm256_add_pd(_mm256_mul_pd(A, v), aq);
    const __m256d le = _mm256_cmp_pd(v, q, _CMP_LE_OQ);
    const __m256d p = _mm256_blendv_pd(cap, under, le);
    s = _mm256_add_pd(s, p);
    s2 = _mm256_add_pd(s2, _mm256_mul_pd(p, p));
  }
  alignas(32) double ls[4], ls2[4];
  _mm256_store_pd(ls, s);
  _mm256_store_pd(ls2, s2);
  for (int l = 0; i < demand.size(); ++i, ++l) {
    const double xv = demand[i];
    const double p = xv <= order_q ? k.A * xv + k.a * order_q : cap_s;
    ls[l] += p;
    ls2[l] += p * p;
  }
  return {(ls[0] + ls[1]) + (ls[2] + ls[3]), (ls2[0] + ls2[1]) + (ls2[2] + ls2[3])};
}

void gaussian_pdf(std::span<const double> x, double mu, double sigma, std::span<double> out) {
  const double inv_s = 1.0 / sigma;
  const double norm_s = inv_s * std::numbers::inv_sqrtpi / std::numbers::sqrt2;
  const __m256d m = _mm256_set1_pd(mu);
  const __m256d inv = _mm256_set1_pd(inv_s);
  const __m256d norm = _mm256_set1_pd(norm_s);
  const __m256d neg_half = _mm256_set1_pd(-0.5);
  std::size_t i = 0;
  for (; i + 4 <= x.size(); i += 4) {
    const __m256d z = _mm256_mul_pd(_mm256_sub_pd(_mm256_loadu_pd(x.data() + i), m), inv);
    const __m256d e = exp_pd(_mm256_mul_pd(_mm256_mul_pd(neg_half, z), z));
    _mm256_storeu_pd(out.data() + i, _mm256_mul_pd(norm, e));
  }
  for (; i < x.size(); ++i) {
    const double z = (x[i] - mu) * inv_s;
    out[i] = norm_s * std::exp(-0.5 * z * z);
  }
}

void defuzzified_columns(ComponentColumns in, double P1, double P2, double P3, double beta,
                         std::span<double> cdf, std::span<double> pdf) {
  const std::size_t n = in.F1.size();
  const double w_s = 2.0 * beta - 1.0;
  const double keep_s = 1.0 - beta;
  const __m256d vP1 = _mm256_set1_pd(P1), vP2 = _mm256_set1_pd(P2), vP3 = _mm256_set1_pd(P3);
  const __m256d two = _mm256_set1_pd(2.0), half = _mm256_set1_pd(0.5);
  const __m256d w = _mm256_set1_pd(w_s), keep = _mm256_set1_pd(keep_s);
  const __m256d P12 = _mm256_set1_pd(P1 + P2), P23 = _mm256_set1_pd(P2 + P3);
  const __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d F1 = _mm256_loadu_pd(in.F1.data() + i);
    const __m256d F2 = _mm256_loadu_pd(in.F2.data() + i);
    if (!cdf.empty()) {
      // H = P1 F1 F1 + 2 P2 F1 F2 + P3 F2 F2, evaluated left to right.
      __m256d H = _mm256_mul_pd(_mm256_mul_pd(vP1, F1), F1);
      H = _mm256_add_pd(H, _mm256_mul_pd(_mm256_mul_pd(_mm256_mul_pd(two, vP2), F1), F2));
      H = _mm256_add_pd(H, _mm256_mul_pd(_mm256_mul_pd(vP3, F2), F2));
      __m256d J = _mm256_mul_pd(vP1, F1);
      J = _mm256_add_pd(J, _mm256_mul_pd(vP2, _mm256_add_pd(F1, F2)));
      J = _mm256_add_pd(J, _mm256_mul_pd(vP3, F2));
      const __m256d c = _mm256_add_pd(_mm256_mul_pd(half, H), _mm256_mul_pd(keep, _mm256_sub_pd(J, H)));
      _mm256_storeu_pd(cdf.data() + i, c);
    }
    if (!pdf.empty()) {
      const __m256d f1 = _mm256_loadu_pd(in.f1.data() + i);
      const __m256d f2 = _mm256_loadu_pd(in.f2.data() + i);
      const __m256d t1 = _mm256_mul_pd(f1, _mm256_add_pd(_mm256_mul_pd(vP1, F1), _mm256_mul_pd(vP2, F2)));
      const __m256d t2 = _mm256_mul_pd(f2, _mm256_add_pd(_mm256_mul_pd(vP2, F1), _mm256_mul_pd(vP3, F2)));
      const __m256d lin = _mm256_add_pd(_mm256_mul_pd(P12, f1), _mm256_mul_pd(P23, f2));
      const __m256d v = _mm256_add_pd(_mm256_mul_pd(w, _mm256_add_pd(t1, t2)), _mm256_mul_pd(keep, lin));
      _mm256_storeu_pd(pdf.data() + i, _mm256_max_pd(v, zero));
    }
  }
  if (i < n) {
    ComponentColumns tail{in.F1.subspan(i), in.F2.subspan(i), in.f1.empty() ? in.f1 : in.f1.subspan(i),
                          in.f2.empty() ? in.f2 : in.f2.subspan(i)};
    scalar::defuzzified_columns(tail, P1, P2, P3, beta, cdf.empty() ? cdf : cdf.subspan(i),
                                pdf.empty() ? pdf : pdf.subspan(i));
  }
}

ClassCounts classify_inclinations(std::span<const double> q1, std::span<const double> q2,
                                  double mean_rating) {
  const __m256d m = _mm256_set1_pd(mean_rating);
  __m256i c1 = _mm256_setzero_si256();
  __m256i c2 = _mm256_setzero_si256();
  std::size_t i = 0;
  const std::size_t n = q1.size();
  for (; i + 4 <= n; i += 4) {
    const __m256d a = _mm256_loadu_pd(q1.data() + i);
    const __m256d b = _mm256_loadu_pd(q2.data() + i);
    const __m256d first = _mm256_cmp_pd(b, m, _CMP_LE_OQ);
    const __m256d second = _mm256_andnot_pd(first, _mm256_cmp_pd(a, m, _CMP_LE_OQ));
    // Comparison masks are all-ones (-1) per lane; subtracting counts them.
    c1 = _mm256_sub_epi64(c1, _mm256_castpd_si256(first));
    c2 = _mm256_sub_epi64(c2, _mm256_castpd_si256(second));
  }
  alignas(32) std::int64_t l1[4], l2[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(l1), c1);
  _mm256_store_si256(reinterpret_cast<__m256i*>(l2), c2);
  ClassCounts out;
  out.n1 = l1[0] + l1[1] + l1[2] + l1[3];
  out.n2 = l2[0] + l2[1] + l2[2] + l2[3];
  const ClassCounts tail = scalar::classify_inclinations(q1.subspan(i), q2.subspan(i), mean_rating);
  out.n1 += tail.n1;
  out.n2 += tail.n2;
  out.n0 = static_cast<std::int64_t>(n) - out.n1 - out.n2;
  return out;
}

}  // namespace fuzzynv::kernels::avx2

#else

#include <stdexcept>

namespace fuzzynv::kernels::avx2 {

[[noreturn]] static void unavailable() { throw std::logic_error("AVX2 kernels not compiled in"); }

ProfitSums profit_sums(std::span<const double>, double, ProfitCoefficients) { unavailable(); }
void gaussian_pdf(std::span<const double>, double, double, std::span<double>) { unavailable(); }
void defuzzified_columns(ComponentColumns, double, double, double, double, std::span<double>,
                         std::span<double>) {
  unavailable();
}
ClassCounts classify_inclinations(std::span<const double>, std::span<const double>, double) {
  unavailable();
}

}  // namespace fuzzynv::kernels::avx2

#endif
