#pragma once

// Data-parallel inner loops. Each kernel has a scalar reference
// implementation and, on x86-64, an AVX2+FMA variant chosen at runtime.
// The two are kept numerically equivalent (see tests/test_kernels.cpp).

#include <cstdint>
#include <span>
#include <string_view>

namespace fuzzynv::kernels {

enum class Backend { scalar, avx2 };

std::string_view to_string(Backend b) noexcept;

/// True if this binary was built with the AVX2 variants and the CPU runs them.
bool avx2_available() noexcept;

/// Backend used when none is passed explicitly: AVX2 when available, unless
/// the environment variable FUZZYNV_SIMD is set to "scalar".
Backend active_backend() noexcept;

/// Running sums of the newsvendor profit over a batch of demand draws.
struct ProfitSums {
  double sum = 0.0;
  double sum_sq = 0.0;
};

/// Newsvendor profit per unit demand: A x + a Q when x <= Q, else b Q.
struct ProfitCoefficients {
  double A = 0.0;
  double a = 0.0;
  double b = 0.0;
};

ProfitSums profit_sums(std::span<const double> demand, double order_q, ProfitCoefficients k,
                       Backend backend = active_backend());

/// out[i] = N(mu, sigma^2) density at x[i].
void gaussian_pdf(std::span<const double> x, double mu, double sigma, std::span<double> out,
                  Backend backend = active_backend());

/// Inputs per grid point for the defuzzified demand model.
struct ComponentColumns {
  std::span<const double> F1;
  std::span<const double> F2;
  std::span<const double> f1;
  std::span<const double> f2;
};

/// cdf[i] = H/2 + (1 - beta)(J - H) and
/// pdf[i] = (2 beta - 1)(f1 (P1 F1 + P2 F2) + f2 (P2 F1 + P3 F2)) + (1 - beta)((P1 + P2) f1 + (P2 + P3) f2),
/// clamped at 0. Either output may be empty to skip it.
void defuzzified_columns(ComponentColumns in, double P1, double P2, double P3, double beta,
                         std::span<double> cdf, std::span<double> pdf,
                         Backend backend = active_backend());

/// Buying-inclination classification against a mean rating m:
/// n1: q2 <= m (orders without hesitation), n2: q1 <= m < q2 (hesitates, orders),
/// n0: everything else.
struct ClassCounts {
  std::int64_t n0 = 0;
  std::int64_t n1 = 0;
  std::int64_t n2 = 0;
};

ClassCounts classify_inclinations(std::span<const double> q1, std::span<const double> q2,
                                  double mean_rating, Backend backend = active_backend());

namespace scalar {
ProfitSums profit_sums(std::span<const double> demand, double order_q, ProfitCoefficients k);
void gaussian_pdf(std::span<const double> x, double mu, double sigma, std::span<double> out);
void defuzzified_columns(ComponentColumns in, double P1, double P2, double P3, double beta,
                         std::span<double> cdf, std::span<double> pdf);
ClassCounts classify_inclinations(std::span<const double> q1, std::span<const double> q2,
                                  double mean_rating);
}  // namespace scalar

namespace avx2 {
ProfitSums profit_sums(std::span<const double> demand, double order_q, ProfitCoefficients k);
void gaussian_pdf(std::span<const double> x, double mu, double sigma, std::span<double> out);
void defuzzified_columns(ComponentColumns in, double P1, double P2, double P3, double beta,
                         std::span<double> cdf, std::span<double> pdf);
ClassCounts classify_inclinations(std::span<const double> q1, std::span<const double> q2,
                                  double mean_rating);
}  // namespace avx2

}  // namespace fuzzynv::kernels
