#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string_view>
#include <vector>

#include "fuzzynv/experiments/scenario.hpp"
#include "fuzzynv/experiments/table.hpp"

namespace fuzzynv::experiments {

/// Table-producing subcommands. Each row is a direct library evaluation; the
/// harness adds no arithmetic of its own.
///   density    weight,beta,x,pdf,cdf
///   moments    weight,beta,mean,variance
///   optimize   weight,cost,beta,q_mean_weight,q_p0,q_p1,q_fuzzy
///   profit     weight,cost,beta,q_fuzzy,expected_profit,profit_variance
///   compare    weight,cost,beta,candidate,q_candidate,q_fuzzy,expected_candidate,expected_fuzzy,
///              variance_candidate,variance_fuzzy,benefit,benefit_status,variance_change,variance_status
///   simulate-p simulate_p: mean_rating,status,p0,p1,p2,p3,p4,alpha_scale,<counts>
///              simulate_p_replicates: seed,mean_rating,status,p0,p1,p2,p3,p4,alpha_scale,<counts>
enum class Command { density, moments, optimize, profit, compare, simulate_p };

inline constexpr std::array kTableCommands{Command::density, Command::moments,  Command::optimize,
                                           Command::profit,  Command::compare,  Command::simulate_p};

std::string_view to_string(Command c) noexcept;
std::optional<Command> command_from_string(std::string_view s) noexcept;

struct RunOptions {
  std::optional<std::uint64_t> seed;  ///< replaces the simulation seed
  unsigned threads = 0;               ///< 0: hardware concurrency
};

std::vector<Table> run_command(Command c, const ScenarioConfig& cfg, const RunOptions& opts = {});

/// run_command followed by write_table for every table.
std::vector<std::filesystem::path> run_and_write(Command c, const ScenarioConfig& cfg,
                                                 const std::filesystem::path& out_dir, bool svg,
                                                 const RunOptions& opts = {});

}  // namespace fuzzynv::experiments
