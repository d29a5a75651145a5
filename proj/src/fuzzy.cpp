#include "fuzzynv/fuzzy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fuzzynv/error.hpp"

namespace fuzzynv {

TrapezoidalFuzzyNumber::TrapezoidalFuzzyNumber(double r1, double r2, double r3, double r4)
    : r_{r1, r2, r3, r4} {
  if (!(std::isfinite(r1) && std::isfinite(r2) && std::isfinite(r3) && std::isfinite(r4)) ||
      !(r1 <= r2 && r2 <= r3 && r3 <= r4)) {
    std::ostringstream os;
    os << "trapezoidal fuzzy number requires finite r1 <= r2 <= r3 <= r4, got (" << r1 << ", "
       << r2 << ", " << r3 << ", " << r4 << ")";
    throw InvalidArgument(os.str());
  }
}

TrapezoidalFuzzyNumber TrapezoidalFuzzyNumber::weight(double p1, double p2, double p3, double p4) {
  TrapezoidalFuzzyNumber p(p1, p2, p3, p4);
  if (!p.is_weight()) {
    std::ostringstream os;
    os << "fuzzy weight must have support in [0, 1], got (" << p1 << ", " << p2 << ", " << p3
       << ", " << p4 << ")";
    throw InvalidArgument(os.str());
  }
  return p;
}

double TrapezoidalFuzzyNumber::membership(double x) const noexcept {
  const auto [r1, r2, r3, r4] = r_;
  if (x < r1 || x > r4) return 0.0;
  if (x >= r2 && x <= r3) return 1.0;
  if (x < r2) return (x - r1) / (r2 - r1);
  return (r4 - x) / (r4 - r3);
}

AlphaCut TrapezoidalFuzzyNumber::alpha_cut(double alpha) const {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw InvalidArgument("alpha-cut level must lie in [0, 1]");
  }
  return {r_[0] + (r_[1] - r_[0]) * alpha, r_[3] + (r_[2] - r_[3]) * alpha, alpha};
}

double TrapezoidalFuzzyNumber::expected_value() const noexcept {
  return (r_[0] + r_[1] + r_[2] + r_[3]) / 4.0;
}

// Pos{r >= y} = sup_{x >= y} r(x),  Nec{r >= y} = 1 - sup_{x < y} r(x).
CredibilityTriple TrapezoidalFuzzyNumber::credibility_geq(double y) const noexcept {
  const auto [r1, r2, r3, r4] = r_;
  double pos = 0.0;
  if (y <= r3) {
    pos = 1.0;
  } else if (y <= r4) {
    pos = (r4 - y) / (r4 - r3);
  }
  double sup_below = 0.0;
  if (y > r2) {
    sup_below = 1.0;
  } else if (y > r1) {
    sup_below = (y - r1) / (r2 - r1);
  }
  const double nec = 1.0 - sup_below;
  return {pos, nec, 0.5 * (pos + nec)};
}

// Pos{r <= y} = sup_{x <= y} r(x),  Nec{r <= y} = 1 - sup_{x > y} r(x).
CredibilityTriple TrapezoidalFuzzyNumber::credibility_leq(double y) const noexcept {
  const auto [r1, r2, r3, r4] = r_;
  double pos = 0.0;
  if (y >= r2) {
    pos = 1.0;
  } else if (y >= r1) {
    pos = (y - r1) / (r2 - r1);
  }
  double sup_above = 0.0;
  if (y < r3) {
    sup_above = 1.0;
  } else if (y < r4) {
    sup_above = (r4 - y) / (r4 - r3);
  }
  const double nec = 1.0 - sup_above;
  return {pos, nec, 0.5 * (pos + nec)};
}

TrapezoidalFuzzyNumber operator+(const TrapezoidalFuzzyNumber& r, const TrapezoidalFuzzyNumber& s) {
  return {r.r1() + s.r1(), r.r2() + s.r2(), r.r3() + s.r3(), r.r4() + s.r4()};
}

AlphaCutTable::AlphaCutTable(std::vector<double> lo, std::vector<double> hi)
    : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (lo_.size() != static_cast<std::size_t>(kLevels) || hi_.size() != lo_.size()) {
    throw InvalidArgument("alpha-cut table needs exactly 101 levels");
  }
  for (int i = 0; i < kLevels; ++i) {
    if (!(lo_[i] <= hi_[i])) throw InvalidArgument("alpha-cut table has lo > hi");
  }
}

AlphaCutTable AlphaCutTable::from(const TrapezoidalFuzzyNumber& r) {
  std::vector<double> lo(kLevels), hi(kLevels);
  for (int i = 0; i < kLevels; ++i) {
    const AlphaCut c = r.alpha_cut(level(i));
    lo[i] = c.lo;
    hi[i] = c.hi;
  }
  return {std::move(lo), std::move(hi)};
}

AlphaCut AlphaCutTable::cut(double alpha) const {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw InvalidArgument("alpha-cut level must lie in [0, 1]");
  }
  const double pos = alpha * (kLevels - 1);
  const int i = std::min(static_cast<int>(pos), kLevels - 2);
  const double t = pos - i;
  return {lo_[i] + t * (lo_[i + 1] - lo_[i]), hi_[i] + t * (hi_[i + 1] - hi_[i]), alpha};
}

AlphaCutTable multiply(const AlphaCutTable& r, const AlphaCutTable& s) {
  std::vector<double> lo(AlphaCutTable::kLevels), hi(AlphaCutTable::kLevels);
  for (int i = 0; i < AlphaCutTable::kLevels; ++i) {
    const double p[4] = {r.lower()[i] * s.lower()[i], r.lower()[i] * s.upper()[i],
                         r.upper()[i] * s.lower()[i], r.upper()[i] * s.upper()[i]};
    lo[i] = *std::min_element(p, p + 4);
    hi[i] = *std::max_element(p, p + 4);
  }
  return {std::move(lo), std::move(hi)};
}

AlphaCutTable multiply(const TrapezoidalFuzzyNumber& r, const TrapezoidalFuzzyNumber& s) {
  return multiply(AlphaCutTable::from(r), AlphaCutTable::from(s));
}

AlphaCutTable extend_unary(const std::function<double(double)>& h, const TrapezoidalFuzzyNumber& r,
                           std::span<const double> turning_points) {
  constexpr int kGrid = 64;
  std::vector<double> lo(AlphaCutTable::kLevels), hi(AlphaCutTable::kLevels);
  auto eval = [&](double x) {
    const double y = h(x);
    if (!std::isfinite(y)) {
      std::ostringstream os;
      os << "extension map is not evaluable at x = " << x;
      throw NumericalError(os.str());
    }
    return y;
  };
  for (int i = 0; i < AlphaCutTable::kLevels; ++i) {
    const AlphaCut c = r.alpha_cut(AlphaCutTable::level(i));
    double mn = eval(c.lo);
    double mx = mn;
    auto take = [&](double x) {
      const double y = eval(x);
      mn = std::min(mn, y);
      mx = std::max(mx, y);
    };
    if (c.hi > c.lo) {
      for (int k = 1; k <= kGrid; ++k) take(c.lo + (c.hi - c.lo) * k / kGrid);
      for (double t : turning_points) {
        if (t > c.lo && t < c.hi) take(t);
      }
    }
    lo[i] = mn;
    hi[i] = mx;
  }
  return {std::move(lo), std::move(hi)};
}

}  // namespace fuzzynv
