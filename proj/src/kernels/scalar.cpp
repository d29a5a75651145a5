#include <cmath>
#include <numbers>

#include "fuzzynv/kernels.hpp"

namespace fuzzynv::kernels::scalar {

ProfitSums profit_sums(std::span<const double> demand, double order_q, ProfitCoefficients k) {
  // Four interleaved accumulators, matching the lane layout of the vector
  // variant so both sum in the same order.
  double s[4] = {0, 0, 0, 0};
  double s2[4] = {0, 0, 0, 0};
  const double cap = k.b * order_q;
  std::size_t i = 0;
  for (; i + 4 <= demand.size(); i += 4) {
    for (int l = 0; l < 4; ++l) {
      const double x = demand[i + l];
      const double p = x <= order_q ? k.A * x + k.a * order_q : cap;
      s[l] += p;
      s2[l] += p * p;
    }
  }
  for (int l = 0; i < demand.size(); ++i, ++l) {
    const double x = demand[i];
    const double p = x <= order_q ? k.A * x + k.a * order_q : cap;
    s[l] += p;
    s2[l] += p * p;
  }
  return {(s[0] + s[1]) + (s[2] + s[3]), (s2[0] + s2[1]) + (s2[2] + s2[3])};
}

void gaussian_pdf(std::span<const double> x, double mu, double sigma, std::span<double> out) {
  const double inv = 1.0 / sigma;
  const double norm = inv * std::numbers::inv_sqrtpi / std::numbers::sqrt2;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double z = (x[i] - mu) * inv;
    out[i] = norm * std::exp(-0.5 * z * z);
  }
}

void defuzzified_columns(ComponentColumns in, double P1, double P2, double P3, double beta,
                         std::span<double> cdf, std::span<double> pdf) {
  const std::size_t n = in.F1.size();
  const double w = 2.0 * beta - 1.0;
  const double keep = 1.0 - beta;
  for (std::size_t i = 0; i < n; ++i) {
    const double F1 = in.F1[i], F2 = in.F2[i];
    if (!cdf.empty()) {
      const double H = P1 * F1 * F1 + 2.0 * P2 * F1 * F2 + P3 * F2 * F2;
      const double J = P1 * F1 + P2 * (F1 + F2) + P3 * F2;
      cdf[i] = 0.5 * H + keep * (J - H);
    }
    if (!pdf.empty()) {
      const double f1 = in.f1[i], f2 = in.f2[i];
      const double v = w * (f1 * (P1 * F1 + P2 * F2) + f2 * (P2 * F1 + P3 * F2)) +
                       keep * ((P1 + P2) * f1 + (P2 + P3) * f2);
      pdf[i] = v > 0.0 ? v : 0.0;
    }
  }
}

ClassCounts classify_inclinations(std::span<const double> q1, std::span<const double> q2,
                                  double mean_rating) {
  ClassCounts c;
  for (std::size_t i = 0; i < q1.size(); ++i) {
    if (q2[i] <= mean_rating) {
      ++c.n1;
    } else if (q1[i] <= mean_rating) {
      ++c.n2;
    } else {
      ++c.n0;
    }
  }
  return c;
}

}  // namespace fuzzynv::kernels::scalar
