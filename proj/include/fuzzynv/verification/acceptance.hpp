#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

namespace fuzzynv::verification {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
};

struct AcceptanceOptions {
  std::uint64_t seed = 20240601;       ///< base seed for every stochastic check
  std::filesystem::path scratch_dir;   ///< where determinism reruns write; empty: a temp dir
};

CriterionResult coefficient_identities(const AcceptanceOptions& o);
CriterionResult cdf_validity(const AcceptanceOptions& o);
CriterionResult risk_neutral_reduction(const AcceptanceOptions& o);
CriterionResult derivative_oracles(const AcceptanceOptions& o);
CriterionResult beta_monotonicity(const AcceptanceOptions& o);
CriterionResult profit_statistics(const AcceptanceOptions& o);
CriterionResult landmark_quantities(const AcceptanceOptions& o);
CriterionResult simulation_reproduction(const AcceptanceOptions& o);
CriterionResult benefit_behaviour(const AcceptanceOptions& o);
/// Byte-identical reruns of every table subcommand, and all earlier criteria
/// passing (which is what makes `verify` exit 0).
CriterionResult cli_determinism(const AcceptanceOptions& o, const std::vector<CriterionResult>& earlier);

/// Runs all ten criteria in order; `on_result` sees each as it finishes.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& o,
                                            const std::function<void(const CriterionResult&)>& on_result = {});

/// "[PASS] 3 title: detail"
std::string format_result(const CriterionResult& r);

}  // namespace fuzzynv::verification
