#include "fuzzynv/review_sim.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fuzzynv/kernels.hpp"
#include "fuzzynv/philox.hpp"

namespace fuzzynv {
namespace {

constexpr double kMaxStars = 5.0;

bool in_stars(double v) { return v >= 0.0 && v <= kMaxStars; }

}  // namespace

void PopulationConfig::validate() const {
  auto fail = [](const std::string& msg) { throw InvalidArgument("population config: " + msg); };
  if (n_visitors <= 0) fail("n_visitors must be positive");
  if (!(prospect_fraction >= 0.0 && prospect_fraction <= 1.0)) fail("prospect_fraction must lie in [0, 1]");
  if (!(ric_fraction >= 0.0 && ric_fraction <= 1.0)) fail("ric_fraction must lie in [0, 1]");
  if (!(q_std > 0.0) || !std::isfinite(q_std)) fail("q_std must be positive");
  if (!in_stars(mean_rating)) fail("mean_rating must lie in [0, 5]");
  for (int i = 0; i < 2; ++i) {
    if (!in_stars(rsc_q_means[i]) || !in_stars(prospect_q_means[i])) fail("q means must lie in [0, 5]");
    if (rsc_q_means[i] > prospect_q_means[i]) {
      fail("rsc-customer q means must not exceed prospect q means");
    }
  }
}

PopulationSplit split_population(const PopulationConfig& cfg) {
  cfg.validate();
  PopulationSplit s;
  s.n_prospects = std::llround(cfg.prospect_fraction * static_cast<double>(cfg.n_visitors));
  s.n_customers = cfg.n_visitors - s.n_prospects;
  s.n_ric = std::llround(cfg.ric_fraction * static_cast<double>(s.n_customers));
  s.n_rsc = s.n_customers - s.n_ric;
  return s;
}

InclinationDraws draw_inclinations(const PopulationConfig& cfg) {
  const PopulationSplit s = split_population(cfg);
  const auto key = Philox4x32::key_from_seed(cfg.seed);
  auto draw = [&](std::int64_t visitor, const std::array<double, 2>& means) {
    const auto idx = static_cast<std::uint64_t>(visitor);
    const auto [z1, z2] = Philox4x32::normal_pair(
        {static_cast<std::uint32_t>(idx), static_cast<std::uint32_t>(idx >> 32), 0u, 0u}, key);
    return std::pair{std::clamp(means[0] + cfg.q_std * z1, 0.0, kMaxStars),
                     std::clamp(means[1] + cfg.q_std * z2, 0.0, kMaxStars)};
  };

  InclinationDraws out;
  out.rsc_q1.resize(s.n_rsc);
  out.rsc_q2.resize(s.n_rsc);
  out.prospect_q1.resize(s.n_prospects);
  out.prospect_q2.resize(s.n_prospects);
  for (std::int64_t i = 0; i < s.n_rsc; ++i) {
    std::tie(out.rsc_q1[i], out.rsc_q2[i]) = draw(s.n_ric + i, cfg.rsc_q_means);
  }
  for (std::int64_t i = 0; i < s.n_prospects; ++i) {
    std::tie(out.prospect_q1[i], out.prospect_q2[i]) = draw(s.n_customers + i, cfg.prospect_q_means);
  }
  return out;
}

OrderCounts classify_visitors(const InclinationDraws& draws, std::int64_t n_ric, double mean_rating) {
  const kernels::ClassCounts rsc = kernels::classify_inclinations(draws.rsc_q1, draws.rsc_q2, mean_rating);
  const kernels::ClassCounts pro =
      kernels::classify_inclinations(draws.prospect_q1, draws.prospect_q2, mean_rating);
  return {n_ric, rsc.n1, rsc.n2, rsc.n0, pro.n1, pro.n2, pro.n0};
}

OrderCounts simulate_visitors(const PopulationConfig& cfg) {
  const PopulationSplit s = split_population(cfg);
  return classify_visitors(draw_inclinations(cfg), s.n_ric, cfg.mean_rating);
}

std::string_view to_string(WeightStatus s) noexcept {
  switch (s) {
    case WeightStatus::ok:
      return "ok";
    case WeightStatus::undefined_p0:
      return "undefined_p0";
    case WeightStatus::out_of_range:
      return "out_of_range";
  }
  return "unknown";
}

WeightLegs compute_weight_legs(const OrderCounts& c) noexcept {
  WeightLegs w;
  const double ordered_customers = static_cast<double>(c.n_ric + c.n1_rsc + c.n2_rsc);
  if (!(ordered_customers > 0.0)) {
    w.status = WeightStatus::undefined_p0;
    return w;
  }
  w.p0 = static_cast<double>(c.n1_rsc + c.n2_rsc) / ordered_customers;
  const double n = static_cast<double>(c.n_ric + c.n1_rsc + c.n2_rsc + c.n1_p + c.n2_p);
  const double denom = static_cast<double>(4 * c.n1_rsc + 3 * c.n2_rsc + 2 * c.n1_p + c.n2_p);
  w.alpha_scale = w.p0 > 0.0 ? 4.0 * n * w.p0 / denom : 0.0;
  const double s = w.alpha_scale / n;
  const double p2 = s * static_cast<double>(c.n1_rsc + c.n2_rsc);
  w.legs = {s * static_cast<double>(c.n1_rsc), p2, p2 + s * static_cast<double>(c.n1_p),
            p2 + s * static_cast<double>(c.n1_p + c.n2_p)};
  if (w.legs[3] > 1.0) w.status = WeightStatus::out_of_range;
  return w;
}

DerivedWeight derive_fuzzy_weight(const OrderCounts& counts) {
  const WeightLegs w = compute_weight_legs(counts);
  if (w.status == WeightStatus::undefined_p0) {
    throw WeightDerivationError(w.status, "p0 undefined: no customer placed an order");
  }
  if (w.status == WeightStatus::out_of_range) {
    std::ostringstream os;
    os << "derived weight leaves [0, 1]: p4 = " << w.legs[3];
    throw WeightDerivationError(w.status, os.str());
  }
  return {w.p0, w.alpha_scale, TrapezoidalFuzzyNumber::weight(w.legs)};
}

std::vector<SweepRow> rating_sweep(const PopulationConfig& cfg, std::span<const double> ratings) {
  const PopulationSplit s = split_population(cfg);
  for (double m : ratings) {
    if (!in_stars(m)) {
      std::ostringstream os;
      os << "rating sweep value " << m << " outside [0, 5]";
      throw InvalidArgument(os.str());
    }
  }
  const InclinationDraws draws = draw_inclinations(cfg);
  std::vector<SweepRow> rows;
  rows.reserve(ratings.size());
  for (double m : ratings) {
    SweepRow row;
    row.mean_rating = m;
    row.counts = classify_visitors(draws, s.n_ric, m);
    row.weight = compute_weight_legs(row.counts);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace fuzzynv
