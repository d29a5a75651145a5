#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

namespace fuzzynv {

struct AlphaCut {
  double lo = 0.0;
  double hi = 0.0;
  double alpha = 0.0;
};

/// Possibility, necessity and credibility of an event {r >= y} or {r <= y}.
struct CredibilityTriple {
  double possibility = 0.0;
  double necessity = 0.0;
  double credibility = 0.0;
};

/// Trapezoidal fuzzy number (r1, r2, r3, r4), r1 <= r2 <= r3 <= r4.
///
/// Membership rises linearly on [r1, r2], equals 1 on [r2, r3] and falls
/// linearly on [r3, r4]. Degenerate legs (r1 == r2 or r3 == r4) are allowed;
/// the membership at a vertical leg is 1.
class TrapezoidalFuzzyNumber {
 public:
  TrapezoidalFuzzyNumber(double r1, double r2, double r3, double r4);

  static TrapezoidalFuzzyNumber crisp(double value) {
    return {value, value, value, value};
  }
  /// Same as the constructor, but additionally requires 0 <= r1 and r4 <= 1.
  static TrapezoidalFuzzyNumber weight(double p1, double p2, double p3, double p4);
  static TrapezoidalFuzzyNumber weight(const std::array<double, 4>& p) {
    return weight(p[0], p[1], p[2], p[3]);
  }

  double r1() const noexcept { return r_[0]; }
  double r2() const noexcept { return r_[1]; }
  double r3() const noexcept { return r_[2]; }
  double r4() const noexcept { return r_[3]; }
  const std::array<double, 4>& legs() const noexcept { return r_; }

  bool is_weight() const noexcept { return r_[0] >= 0.0 && r_[3] <= 1.0; }

  double membership(double x) const noexcept;
  AlphaCut alpha_cut(double alpha) const;

  /// Credibility expected value, (r1 + r2 + r3 + r4) / 4.
  double expected_value() const noexcept;

  CredibilityTriple credibility_geq(double y) const noexcept;
  CredibilityTriple credibility_leq(double y) const noexcept;

  friend bool operator==(const TrapezoidalFuzzyNumber&, const TrapezoidalFuzzyNumber&) = default;

 private:
  std::array<double, 4> r_;
};

TrapezoidalFuzzyNumber operator+(const TrapezoidalFuzzyNumber& r, const TrapezoidalFuzzyNumber& s);

/// A fuzzy number represented by its alpha-cuts sampled at 101 equally spaced
/// levels 0, 0.01, ..., 1. Cuts between levels are linearly interpolated,
/// which is exact for trapezoids.
class AlphaCutTable {
 public:
  static constexpr int kLevels = 101;

  AlphaCutTable(std::vector<double> lo, std::vector<double> hi);
  static AlphaCutTable from(const TrapezoidalFuzzyNumber& r);

  static double level(int i) noexcept { return static_cast<double>(i) / (kLevels - 1); }

  AlphaCut cut(double alpha) const;
  AlphaCut cut_at_level(int i) const { return {lo_[i], hi_[i], level(i)}; }

  const std::vector<double>& lower() const noexcept { return lo_; }
  const std::vector<double>& upper() const noexcept { return hi_; }

 private:
  std::vector<double> lo_;
  std::vector<double> hi_;
};

/// Interval product on every sampled cut: [min of the four endpoint products,
/// max of the four endpoint products].
AlphaCutTable multiply(const TrapezoidalFuzzyNumber& r, const TrapezoidalFuzzyNumber& s);
AlphaCutTable multiply(const AlphaCutTable& r, const AlphaCutTable& s);

/// Extension principle on alpha-cuts: each cut [lo, hi] maps to
/// [min h, max h] over the cut. The extrema are searched at both endpoints,
/// on a uniform grid of 64 subintervals, and at every declared turning point
/// of h (a boundary between its monotone pieces) that falls inside the cut.
/// Throws NumericalError if h returns a non-finite value.
AlphaCutTable extend_unary(const std::function<double(double)>& h, const TrapezoidalFuzzyNumber& r,
                           std::span<const double> turning_points = {});

}  // namespace fuzzynv
