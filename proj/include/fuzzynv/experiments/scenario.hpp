#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fuzzynv/error.hpp"
#include "fuzzynv/fuzzy.hpp"
#include "fuzzynv/newsvendor.hpp"
#include "fuzzynv/normal.hpp"
#include "fuzzynv/review_sim.hpp"

namespace fuzzynv::experiments {

/// Invalid scenario document. line() is 1-based, or 0 when unknown.
class ConfigError : public InvalidArgument {
 public:
  ConfigError(std::string source, int line, std::string path, const std::string& message);

  const std::string& source() const noexcept { return source_; }
  int line() const noexcept { return line_; }
  const std::string& path() const noexcept { return path_; }

 private:
  std::string source_;
  int line_;
  std::string path_;
};

struct NamedCost {
  std::string name;
  CostStructure costs;
};

struct NamedWeight {
  std::string name;
  TrapezoidalFuzzyNumber p_tilde;
};

struct SimulationConfig {
  PopulationConfig population;
  std::vector<double> rating_grid;
  int replicates = 1;  ///< seeds seed, seed + 1, ... for the single-rating table
};

struct ScenarioConfig {
  GaussianComponent c1{200.0, 30.0};  ///< review/marketing-adjusted demand
  GaussianComponent c2{100.0, 20.0};  ///< historical demand
  std::vector<NamedCost> costs;
  std::vector<NamedWeight> weights;
  std::vector<double> beta_grid;
  std::vector<double> density_grid;
  std::optional<SimulationConfig> simulation;
  std::string output_dir = "out";
};

/// Evenly spaced grid start, start + step, ..., stop; stop must be reached to
/// within 1e-9 steps.
std::vector<double> linear_grid(double start, double stop, double step);

/// The numerical study scenario: N(200, 30) / N(100, 20), high and low margin
/// costs, case-1 and case-2 weights (case 2 with p4 = case2_p4), beta in
/// {0, 0.05, ..., 1}, and the visitor simulation.
ScenarioConfig reference_scenario(double case2_p4 = 0.95);

ScenarioConfig parse_scenario(std::string_view json_text, const std::string& source = "<config>");
ScenarioConfig load_scenario(const std::filesystem::path& path);

}  // namespace fuzzynv::experiments
