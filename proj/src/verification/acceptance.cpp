#include "fuzzynv/verification/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <map>
#include <random>
#include <sstream>

#include "fuzzynv/demand.hpp"
#include "fuzzynv/experiments/commands.hpp"
#include "fuzzynv/newsvendor.hpp"
#include "fuzzynv/optimizer.hpp"
#include "fuzzynv/review_sim.hpp"
#include "fuzzynv/verification/oracles.hpp"

namespace fuzzynv::verification {
namespace {

// Tolerances, as stated by each criterion.
constexpr double kIdentityTol = 1e-12;
constexpr double kCdfLimitTol = 1e-9;
constexpr double kPdfMassTol = 1e-8;
constexpr double kReductionTol = 1e-12;
constexpr double kCompatibleTol = 1e-6;
constexpr double kDerivativeRelTol = 1e-3;
constexpr double kStandardErrors = 3.0;
constexpr double kDirectProfitRelTol = 1e-6;
constexpr double kClassicalTol = 0.05;
constexpr double kMeanWeightTol = 0.2;
constexpr double kSimulationTol = 0.03;
constexpr double kP0IdentityTol = 1e-12;
constexpr double kBenefitTol = 1e-9;
constexpr double kMinPeakBenefit = 0.5;

const Components kStudy{200.0, 30.0, 100.0, 20.0};
const GaussianComponent kC1{200.0, 30.0};
const GaussianComponent kC2{100.0, 20.0};
const CostStructure kHighMargin{10.0, 50.0, 5.0};
const CostStructure kLowMargin{10.0, 12.0, 5.0};
const TrapezoidalFuzzyNumber kCase1 = TrapezoidalFuzzyNumber::weight(0.1, 0.2, 0.4, 0.4);
const TrapezoidalFuzzyNumber kCase2 = TrapezoidalFuzzyNumber::weight(0.6, 0.7, 0.9, 0.95);
const TrapezoidalFuzzyNumber kCase2Caption = TrapezoidalFuzzyNumber::weight(0.6, 0.7, 0.9, 0.9);

std::vector<double> beta_grid() {
  std::vector<double> g;
  for (int i = 0; i <= 20; ++i) g.push_back(i / 20.0);
  return g;
}

std::array<double, 4> random_weight(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::array<double, 4> p{u(rng), u(rng), u(rng), u(rng)};
  std::sort(p.begin(), p.end());
  return p;
}

CostStructure random_costs(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double C = 10.0;
  const double V = C * (0.1 + 0.8 * u(rng));
  const double M = C * (1.05 + 4.0 * u(rng));
  return {C, M, V};
}

std::string fmt(double v, int precision = 6) {
  std::ostringstream os;
  os.precision(precision);
  os << v;
  return os.str();
}

CriterionResult make(int id, std::string title, bool passed, std::string detail) {
  return {id, std::move(title), passed, std::move(detail)};
}

}  // namespace

CriterionResult coefficient_identities(const AcceptanceOptions& o) {
  std::mt19937_64 rng(o.seed + 1);
  double worst_sum = 0.0, worst_mean = 0.0;
  long bound_violations = 0;
  for (int i = 0; i < 10000; ++i) {
    const auto legs = random_weight(rng);
    const TrapezoidalFuzzyNumber p = TrapezoidalFuzzyNumber::weight(legs);
    const auto [P1, P2, P3] = mixture_coefficients(p);
    const bool in_bounds = P1 >= -kIdentityTol && P1 <= 2.0 + kIdentityTol && P3 >= -kIdentityTol &&
                           P3 <= 2.0 + kIdentityTol && P2 >= -kIdentityTol && P2 <= 1.0 + kIdentityTol;
    if (!in_bounds) ++bound_violations;
    worst_sum = std::max(worst_sum, std::abs(P1 + 2.0 * P2 + P3 - 2.0));
    worst_mean = std::max(worst_mean, std::abs(0.5 * (P1 + P2) - p.expected_value()));
  }
  const bool ok = bound_violations == 0 && worst_sum <= kIdentityTol && worst_mean <= kIdentityTol;
  return make(1, "coefficient identities", ok,
              "10000 weights, bound violations " + std::to_string(bound_violations) + ", max |P1+2P2+P3-2| " +
                  fmt(worst_sum, 3) + ", max |(P1+P2)/2-E| " + fmt(worst_mean, 3) + " (tol " + fmt(kIdentityTol) +
                  ")");
}

CriterionResult cdf_validity(const AcceptanceOptions& o) {
  std::mt19937_64 rng(o.seed + 2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  long monotone_violations = 0;
  double worst_limit = 0.0, worst_mass = 0.0;
  for (int i = 0; i < 200; ++i) {
    const auto legs = random_weight(rng);
    const DefuzzifiedDemand d(TrapezoidalFuzzyNumber::weight(legs), RiskFactor(u(rng)), kC1, kC2);
    const Bracket s = d.support();
    double prev = d.cdf(s.lo);
    worst_limit = std::max({worst_limit, std::abs(prev), std::abs(1.0 - d.cdf(s.hi))});
    for (int j = 1; j < 1000; ++j) {
      const double F = d.cdf(s.lo + (s.hi - s.lo) * j / 999.0);
      if (F < prev) ++monotone_violations;
      prev = F;
    }
    const double mass = ref_integrate([&](double x) { return d.pdf(x); }, s.lo, s.hi);
    worst_mass = std::max(worst_mass, std::abs(mass - 1.0));
  }
  const bool ok = monotone_violations == 0 && worst_limit <= kCdfLimitTol && worst_mass <= kPdfMassTol;
  return make(2, "CDF validity", ok,
              "200 (weight, beta), monotonicity violations " + std::to_string(monotone_violations) +
                  ", max limit error " + fmt(worst_limit, 3) + " (tol " + fmt(kCdfLimitTol) + "), max |mass-1| " +
                  fmt(worst_mass, 3) + " (tol " + fmt(kPdfMassTol) + ")");
}

CriterionResult risk_neutral_reduction(const AcceptanceOptions& o) {
  std::mt19937_64 rng(o.seed + 3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst_sup = 0.0;
  for (int i = 0; i < 200; ++i) {
    const TrapezoidalFuzzyNumber p = TrapezoidalFuzzyNumber::weight(random_weight(rng));
    const DefuzzifiedDemand d(p, RiskFactor(0.5), kC1, kC2);
    const double e = p.expected_value();
    const Bracket s = d.support();
    for (int j = 0; j < 1000; ++j) {
      const double x = s.lo + (s.hi - s.lo) * j / 999.0;
      worst_sup = std::max(worst_sup, std::abs(d.cdf(x) - ref_mixture_cdf(x, e, kStudy)));
    }
  }
  double worst_q = 0.0;
  for (int i = 0; i < 100; ++i) {
    double pm = u(rng), pM = u(rng);
    if (pm > pM) std::swap(pm, pM);
    const CostStructure& k = i % 2 == 0 ? kHighMargin : kLowMargin;
    const double q_fuzzy = optimal_q_mean_weight(TrapezoidalFuzzyNumber::weight(pm, pm, pM, pM), kC1, kC2, k);
    const double q_uniform = optimal_q_uniform(pm, pM, kC1, kC2, k);
    worst_q = std::max(worst_q, std::abs(q_fuzzy - q_uniform));
  }
  const bool ok = worst_sup <= kReductionTol && worst_q <= kCompatibleTol;
  return make(3, "beta = 1/2 reduction", ok,
              "sup |F_half - mixture(E p)| " + fmt(worst_sup, 3) + " (tol " + fmt(kReductionTol) +
                  "), max |Q(pm,pm,pM,pM) - Q_uniform| " + fmt(worst_q, 3) + " (tol " + fmt(kCompatibleTol) + ")");
}

CriterionResult derivative_oracles(const AcceptanceOptions& o) {
  std::mt19937_64 rng(o.seed + 4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  constexpr double h = 1.0;
  double worst_rel = 0.0, worst_second = -std::numeric_limits<double>::infinity();
  long fd_failures = 0, concavity_failures = 0;
  for (int inst = 0; inst < 5; ++inst) {
    const GaussianComponent c1(150.0 + 100.0 * u(rng), 20.0 + 20.0 * u(rng));
    const GaussianComponent c2(80.0 + 40.0 * u(rng), 10.0 + 15.0 * u(rng));
    const TrapezoidalFuzzyNumber p = TrapezoidalFuzzyNumber::weight(random_weight(rng));
    const CostStructure k = random_costs(rng);
    const DefuzzifiedDemand d(p, RiskFactor(0.5), c1, c2);
    const double q_lo = d.quantile(0.05), q_hi = d.quantile(0.95);
    for (int j = 0; j < 10; ++j) {
      const double Q = q_lo + (q_hi - q_lo) * u(rng);
      for (Side side : {Side::left, Side::right}) {
        std::map<double, double> cache;
        const auto L = [&](double q) {
          auto it = cache.find(q);
          if (it == cache.end()) it = cache.emplace(q, fuzzy_profit_leg_expectation(side, q, d, k)).first;
          return it->second;
        };
        const double fd = ref_derivative(L, Q, h);
        const double closed = objective_derivative(side, Q, d, k);
        const double rel = std::abs(fd - closed) / std::abs(closed);
        worst_rel = std::max(worst_rel, rel);
        if (!(rel <= kDerivativeRelTol)) ++fd_failures;
        const double second = L(Q + h) - 2.0 * L(Q) + L(Q - h);
        worst_second = std::max(worst_second, second);
        if (!(second <= 0.0)) ++concavity_failures;
      }
    }
  }
  const bool ok = fd_failures == 0 && concavity_failures == 0;
  return make(4, "derivative oracles", ok,
              "5 instances x 10 Q x 2 legs, FD mismatches " + std::to_string(fd_failures) + " (max rel " +
                  fmt(worst_rel, 3) + ", tol " + fmt(kDerivativeRelTol) + "), concavity violations " +
                  std::to_string(concavity_failures) + " (max second difference " + fmt(worst_second, 3) + ")");
}

CriterionResult beta_monotonicity(const AcceptanceOptions&) {
  long q_violations = 0, profit_violations = 0, points = 0;
  const std::pair<const char*, TrapezoidalFuzzyNumber> weights[] = {
      {"case1", kCase1}, {"case2", kCase2}, {"case2 (p4 = 0.9)", kCase2Caption}};
  for (const auto& [name, p] : weights) {
    for (const CostStructure& k : {kHighMargin, kLowMargin}) {
      double prev_q = -std::numeric_limits<double>::infinity();
      double prev_e = -std::numeric_limits<double>::infinity();
      for (double beta : beta_grid()) {
        const DefuzzifiedDemand d(p, RiskFactor(beta), kC1, kC2);
        const double q = optimal_q_beta(d, k);
        const double e = expected_profit(DemandDistribution::of(d), q, k);
        if (q < prev_q) ++q_violations;
        if (e < prev_e) ++profit_violations;
        prev_q = q;
        prev_e = e;
        ++points;
      }
    }
  }
  return make(5, "beta monotonicity", q_violations == 0 && profit_violations == 0,
              std::to_string(points) + " grid points, Q* violations " + std::to_string(q_violations) +
                  ", optimal E[profit] violations " + std::to_string(profit_violations));
}

CriterionResult profit_statistics(const AcceptanceOptions& o) {
  std::mt19937_64 rng(o.seed + 6);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  constexpr long long kDraws = 1'000'000;
  long failures = 0;
  double worst_mean_z = 0.0, worst_var_z = 0.0, worst_direct = 0.0;
  for (int inst = 0; inst < 10; ++inst) {
    const auto legs = random_weight(rng);
    const double beta = u(rng);
    const CostStructure k = inst % 2 == 0 ? (inst % 4 == 0 ? kHighMargin : kLowMargin) : random_costs(rng);
    const DefuzzifiedDemand d(TrapezoidalFuzzyNumber::weight(legs), RiskFactor(beta), kC1, kC2);
    const double Q = d.quantile(0.05 + 0.9 * u(rng));
    const ProfitStats s = profit_stats(DemandDistribution::of(d), Q, k);

    DefuzzifiedSampler sampler(legs, beta, kStudy, o.seed + 600 + static_cast<std::uint64_t>(inst));
    const MonteCarloProfit mc = ref_monte_carlo_profit([&] { return sampler(); }, kDraws, Q, k);
    const double mean_z = std::abs(s.expected_profit - mc.mean) / mc.se_mean;
    const double var_z = std::abs(s.profit_variance - mc.variance) / mc.se_variance;

    const double lo = std::min(kStudy.mu1, kStudy.mu2) - 12.0 * std::max(kStudy.sigma1, kStudy.sigma2);
    const double direct = ref_direct_expected_profit(
        [&](double x) { return ref_defuzzified_pdf(x, legs, beta, kStudy); },
        [&](double x) { return ref_defuzzified_cdf(x, legs, beta, kStudy); }, lo, Q, k);
    const double direct_rel = std::abs(s.expected_profit - direct) / std::abs(direct);

    worst_mean_z = std::max(worst_mean_z, mean_z);
    worst_var_z = std::max(worst_var_z, var_z);
    worst_direct = std::max(worst_direct, direct_rel);
    if (!(mean_z <= kStandardErrors && var_z <= kStandardErrors && direct_rel <= kDirectProfitRelTol)) ++failures;
  }
  return make(6, "closed-form profit statistics", failures == 0,
              "10 instances x 1e6 draws, failing instances " + std::to_string(failures) + ", max |z| mean " +
                  fmt(worst_mean_z, 3) + " variance " + fmt(worst_var_z, 3) + " (limit " + fmt(kStandardErrors) +
                  "), max rel gap to direct integral " + fmt(worst_direct, 3) + " (tol " +
                  fmt(kDirectProfitRelTol) + ")");
}

CriterionResult landmark_quantities(const AcceptanceOptions&) {
  const double classical = classical_optimal_q(DemandDistribution::of(GaussianComponent(100.0, 20.0)), kHighMargin);
  const double high = optimal_q_mean_weight(kCase1, kC1, kC2, kHighMargin);
  const double low = optimal_q_mean_weight(kCase1, kC1, kC2, kLowMargin);

  const double e = kCase1.expected_value();
  const auto oracle = [&](double fractile) {
    return ref_bisect([&](double x) { return ref_mixture_cdf(x, e, kStudy); }, fractile, -500.0, 1000.0);
  };
  const double classical_oracle =
      ref_bisect([](double x) { return ref_normal_cdf(x, 100.0, 20.0); }, 8.0 / 9.0, -500.0, 1000.0);

  const bool ok_classical = std::abs(classical - 124.41) <= kClassicalTol;
  const bool ok_high = std::abs(high - 206.9) <= kMeanWeightTol;
  const bool ok_low = std::abs(low - 94.7) <= kMeanWeightTol;
  std::string detail = "classical " + fmt(classical, 8) + " (oracle " + fmt(classical_oracle, 8) +
                       ", expect 124.41 +- 0.05) " + (ok_classical ? "ok" : "FAIL") + "; case1 high " +
                       fmt(high, 8) + " (oracle " + fmt(oracle(kHighMargin.critical_fractile()), 8) +
                       ", expect 206.9 +- 0.2) " + (ok_high ? "ok" : "FAIL") + "; case1 low " + fmt(low, 8) +
                       " (oracle " + fmt(oracle(kLowMargin.critical_fractile()), 8) + ", expect 94.7 +- 0.2) " +
                       (ok_low ? "ok" : "FAIL");
  return make(7, "landmark quantities", ok_classical && ok_high && ok_low, detail);
}

CriterionResult simulation_reproduction(const AcceptanceOptions& o) {
  constexpr std::array<double, 4> kTarget{0.57, 0.67, 0.75, 0.86};
  std::array<double, 4> mean{};
  double worst_identity = 0.0;
  long flagged = 0;
  for (int i = 0; i < 10; ++i) {
    PopulationConfig cfg;
    cfg.seed = o.seed + 800 + static_cast<std::uint64_t>(i);
    const WeightLegs w = compute_weight_legs(simulate_visitors(cfg));
    if (w.status != WeightStatus::ok) ++flagged;
    for (int j = 0; j < 4; ++j) mean[j] += w.legs[j] / 10.0;
    const double e = (w.legs[0] + w.legs[1] + w.legs[2] + w.legs[3]) / 4.0;
    worst_identity = std::max(worst_identity, std::abs(e - w.p0));
  }
  bool within = true;
  std::string legs;
  for (int j = 0; j < 4; ++j) {
    within = within && std::abs(mean[j] - kTarget[j]) <= kSimulationTol;
    legs += (j ? ", " : "") + fmt(mean[j], 4);
  }
  return make(8, "simulation reproduction", within && flagged == 0 && worst_identity <= kP0IdentityTol,
              "mean p over 10 seeds (" + legs + ") vs (0.57, 0.67, 0.75, 0.86) +- " + fmt(kSimulationTol) +
                  ", flagged runs " + std::to_string(flagged) + ", max |E[p] - p0| " + fmt(worst_identity, 3));
}

CriterionResult benefit_behaviour(const AcceptanceOptions&) {
  long negative = 0, undefined = 0, checked = 0;
  double worst_neutral = 0.0, peak_case1_low = -std::numeric_limits<double>::infinity();
  const std::pair<const char*, TrapezoidalFuzzyNumber> weights[] = {{"case1", kCase1}, {"case2", kCase2}};
  const std::pair<const char*, CostStructure> costs[] = {{"high", kHighMargin}, {"low", kLowMargin}};
  for (const auto& [wname, p] : weights) {
    for (const auto& [kname, k] : costs) {
      const double q0 = optimal_q_crisp_weight(0.0, kC1, kC2, k);
      const double q1 = optimal_q_crisp_weight(1.0, kC1, kC2, k);
      const double qe = optimal_q_mean_weight(p, kC1, kC2, k);
      const bool case1_low = std::string_view(wname) == "case1" && std::string_view(kname) == "low";
      for (double beta : beta_grid()) {
        const DefuzzifiedDemand d(p, RiskFactor(beta), kC1, kC2);
        for (double q : {q0, q1, qe}) {
          const PolicyComparison c = compare_policies(q, d, k);
          if (!c.benefit_ratio) {
            ++undefined;
            continue;
          }
          ++checked;
          if (*c.benefit_ratio < -kBenefitTol) ++negative;
          if (q == qe && beta == 0.5) worst_neutral = std::max(worst_neutral, std::abs(*c.benefit_ratio));
          if (case1_low && q != qe) peak_case1_low = std::max(peak_case1_low, *c.benefit_ratio);
        }
      }
    }
  }
  const bool ok = negative == 0 && worst_neutral <= kBenefitTol && peak_case1_low > kMinPeakBenefit;
  return make(9, "benefit behaviour", ok,
              std::to_string(checked) + " defined ratios (" + std::to_string(undefined) +
                  " undefined, candidate E[profit] <= 0), below -1e-9: " + std::to_string(negative) +
                  ", |benefit| of E[p] candidate at beta 1/2: " + fmt(worst_neutral, 3) +
                  ", case1/low-margin peak vs p in {0,1}: " + fmt(peak_case1_low, 4) + " (needs > " +
                  fmt(kMinPeakBenefit) + ")");
}

namespace {

std::string read_bytes(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

CriterionResult cli_determinism(const AcceptanceOptions& o, const std::vector<CriterionResult>& earlier) {
  namespace fs = std::filesystem;
  using namespace fuzzynv::experiments;
  const fs::path root = o.scratch_dir.empty() ? fs::temp_directory_path() / "fuzzynv_determinism" : o.scratch_dir;
  const ScenarioConfig cfg = reference_scenario();
  long files = 0, mismatches = 0;
  for (Command c : kTableCommands) {
    // The two runs differ in thread count so scheduling cannot hide behind luck.
    const auto first = run_and_write(c, cfg, root / "run1", false, {std::nullopt, 0});
    const auto second = run_and_write(c, cfg, root / "run2", false, {std::nullopt, 1});
    for (std::size_t i = 0; i < first.size(); ++i) {
      ++files;
      if (i >= second.size() || read_bytes(first[i]) != read_bytes(second[i])) ++mismatches;
    }
    if (second.size() != first.size()) ++mismatches;
  }
  long failing = 0;
  std::string failing_ids;
  for (const auto& r : earlier) {
    if (!r.passed) {
      ++failing;
      failing_ids += (failing_ids.empty() ? "" : ",") + std::to_string(r.id);
    }
  }
  return make(10, "CLI determinism", mismatches == 0 && failing == 0,
              std::to_string(files) + " CSV files rerun, byte mismatches " + std::to_string(mismatches) +
                  "; verify exit status " + (failing == 0 ? "0" : "1 (failing criteria " + failing_ids + ")"));
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& o,
                                            const std::function<void(const CriterionResult&)>& on_result) {
  using Check = CriterionResult (*)(const AcceptanceOptions&);
  constexpr Check kChecks[] = {coefficient_identities, cdf_validity,        risk_neutral_reduction,
                               derivative_oracles,     beta_monotonicity,   profit_statistics,
                               landmark_quantities,    simulation_reproduction, benefit_behaviour};
  std::vector<CriterionResult> results;
  const auto record = [&](CriterionResult r) {
    if (on_result) on_result(r);
    results.push_back(std::move(r));
  };
  for (Check check : kChecks) {
    const int id = static_cast<int>(results.size()) + 1;
    try {
      record(check(o));
    } catch (const std::exception& e) {
      record({id, "criterion " + std::to_string(id), false, std::string("threw: ") + e.what()});
    }
  }
  try {
    record(cli_determinism(o, results));
  } catch (const std::exception& e) {
    record({10, "CLI determinism", false, std::string("threw: ") + e.what()});
  }
  return results;
}

std::string format_result(const CriterionResult& r) {
  return std::string(r.passed ? "[PASS] " : "[FAIL] ") + std::to_string(r.id) + " " + r.title + ": " + r.detail;
}

}  // namespace fuzzynv::verification
