#pragma once

namespace fuzzynv {

/// erf and erfc evaluated by a Taylor series for |x| < 2.5 and a Lentz
/// continued fraction beyond. Absolute error below 1e-15 on the real line;
/// erfc keeps relative accuracy in the upper tail.
double erf_series_cf(double x) noexcept;
double erfc_series_cf(double x) noexcept;

/// Standard normal CDF with relative accuracy in both tails.
double standard_normal_cdf(double z) noexcept;
double standard_normal_pdf(double z) noexcept;
/// Inverse of standard_normal_cdf; throws InvalidArgument unless 0 < u < 1.
double standard_normal_quantile(double u);

/// One normal demand hypothesis N(mu, sigma^2), sigma > 0.
class GaussianComponent {
 public:
  GaussianComponent(double mu, double sigma);

  double mu() const noexcept { return mu_; }
  double sigma() const noexcept { return sigma_; }

  double pdf(double x) const noexcept;
  double cdf(double x) const noexcept;
  /// 1 - cdf(x), accurate in the upper tail.
  double sf(double x) const noexcept;
  double quantile(double u) const;

  friend bool operator==(const GaussianComponent&, const GaussianComponent&) = default;

 private:
  double mu_;
  double sigma_;
};

inline double normal_cdf(double x, const GaussianComponent& c) noexcept { return c.cdf(x); }
inline double normal_quantile(double u, const GaussianComponent& c) { return c.quantile(u); }

}  // namespace fuzzynv
