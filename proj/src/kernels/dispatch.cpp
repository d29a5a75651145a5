#include <cstdlib>
#include <string_view>

#include "fuzzynv/kernels.hpp"

namespace fuzzynv::kernels {

std::string_view to_string(Backend b) noexcept { return b == Backend::avx2 ? "avx2" : "scalar"; }

bool avx2_available() noexcept {
#if defined(FUZZYNV_HAVE_AVX2) && (defined(__x86_64__) || defined(__i386__))
  static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return ok;
#else
  return false;
#endif
}

Backend active_backend() noexcept {
  static const Backend chosen = [] {
    const char* env = std::getenv("FUZZYNV_SIMD");
    if (env != nullptr && std::string_view(env) == "scalar") return Backend::scalar;
    return avx2_available() ? Backend::avx2 : Backend::scalar;
  }();
  return chosen;
}

namespace {
bool use_avx2(Backend b) noexcept { return b == Backend::avx2 && avx2_available(); }
}  // namespace

ProfitSums profit_sums(std::span<const double> demand, double order_q, ProfitCoefficients k,
                       Backend backend) {
  return use_avx2(backend) ? avx2::profit_sums(demand, order_q, k)
                           : scalar::profit_sums(demand, order_q, k);
}

void gaussian_pdf(std::span<const double> x, double mu, double sigma, std::span<double> out,
                  Backend backend) {
  if (use_avx2(backend)) {
    avx2::gaussian_pdf(x, mu, sigma, out);
  } else {
    scalar::gaussian_pdf(x, mu, sigma, out);
  }
}

void defuzzified_columns(ComponentColumns in, double P1, double P2, double P3, double beta,
                         std::span<double> cdf, std::span<double> pdf, Backend backend) {
  if (use_avx2(backend)) {
    avx2::defuzzified_columns(in, P1, P2, P3, beta, cdf, pdf);
  } else {
    scalar::defuzzified_columns(in, P1, P2, P3, beta, cdf, pdf);
  }
}

ClassCounts classify_inclinations(std::span<const double> q1, std::span<const double> q2,
                                  double mean_rating, Backend backend) {
  return use_avx2(backend) ? avx2::classify_inclinations(q1, q2, mean_rating)
                           : scalar::classify_inclinations(q1, q2, mean_rating);
}

}  // namespace fuzzynv::kernels
