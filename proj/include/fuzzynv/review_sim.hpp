#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "fuzzynv/error.hpp"
#include "fuzzynv/fuzzy.hpp"

namespace fuzzynv {

/// Website visitor population. Visitors split into prospects (no purchase
/// history) and customers; customers split into review-insensitive (ric, who
/// always order) and review-sensitive (rsc) ones. Every rsc-customer and
/// prospect draws a buying-inclination pair (q1, q2) in stars.
struct PopulationConfig {
  std::int64_t n_visitors = 10000;
  double prospect_fraction = 0.2;   ///< prospects / visitors
  double ric_fraction = 0.3;        ///< ri-customers / customers
  std::array<double, 2> rsc_q_means{1.5, 2.5};
  std::array<double, 2> prospect_q_means{3.0, 4.0};
  double q_std = 1.0;
  double mean_rating = 3.5;         ///< displayed average rating, in [0, 5] stars
  std::uint64_t seed = 1;

  /// Throws InvalidArgument describing the first violated constraint.
  void validate() const;
};

struct PopulationSplit {
  std::int64_t n_prospects = 0;
  std::int64_t n_customers = 0;
  std::int64_t n_ric = 0;
  std::int64_t n_rsc = 0;
};

/// Deterministic head counts: prospects = round(prospect_fraction * visitors),
/// ri-customers = round(ric_fraction * customers).
PopulationSplit split_population(const PopulationConfig& cfg);

/// Sampled inclinations. Visitor i (ri-customers first, then rsc-customers,
/// then prospects) uses Philox counter (i, 0, 0, 0) under key = seed, so a
/// draw depends only on (seed, i).
struct InclinationDraws {
  std::vector<double> rsc_q1, rsc_q2;
  std::vector<double> prospect_q1, prospect_q2;
};

InclinationDraws draw_inclinations(const PopulationConfig& cfg);

struct OrderCounts {
  std::int64_t n_ric = 0;
  std::int64_t n1_rsc = 0;  ///< ordered without hesitation
  std::int64_t n2_rsc = 0;  ///< hesitated, then ordered
  std::int64_t n0_rsc = 0;  ///< did not order
  std::int64_t n1_p = 0;
  std::int64_t n2_p = 0;
  std::int64_t n0_p = 0;

  friend bool operator==(const OrderCounts&, const OrderCounts&) = default;
};

OrderCounts classify_visitors(const InclinationDraws& draws, std::int64_t n_ric, double mean_rating);
OrderCounts simulate_visitors(const PopulationConfig& cfg);

enum class WeightStatus { ok, undefined_p0, out_of_range };
std::string_view to_string(WeightStatus s) noexcept;

/// Raw outcome of the weight derivation; legs are filled whenever p0 is defined.
struct WeightLegs {
  WeightStatus status = WeightStatus::ok;
  double p0 = 0.0;
  double alpha_scale = 0.0;
  std::array<double, 4> legs{};
};

WeightLegs compute_weight_legs(const OrderCounts& counts) noexcept;

struct DerivedWeight {
  double p0 = 0.0;
  double alpha_scale = 0.0;
  TrapezoidalFuzzyNumber p_tilde = TrapezoidalFuzzyNumber::crisp(0.0);
};

class WeightDerivationError : public InvalidArgument {
 public:
  WeightDerivationError(WeightStatus status, const std::string& what)
      : InvalidArgument(what), status_(status) {}
  WeightStatus status() const noexcept { return status_; }

 private:
  WeightStatus status_;
};

/// p0 = (n1_rsc + n2_rsc) / (n_ric + n1_rsc + n2_rsc), then the trapezoid
/// legs scaled so that (p1 + p2 + p3 + p4) / 4 = p0. Throws
/// WeightDerivationError when no customer ordered or when p4 > 1.
DerivedWeight derive_fuzzy_weight(const OrderCounts& counts);

struct SweepRow {
  double mean_rating = 0.0;
  OrderCounts counts;
  WeightLegs weight;
};

/// One row per rating, all classified against the same sampled inclinations.
std::vector<SweepRow> rating_sweep(const PopulationConfig& cfg, std::span<const double> ratings);

}  // namespace fuzzynv
