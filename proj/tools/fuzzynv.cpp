// fuzzynv <subcommand> --config <path> [--out <dir>] [--seed <u64>] [--threads <n>] [--svg]
//
// Exit status: 0 success, 1 acceptance failure (verify), 2 invalid config or
// arguments, 3 numerical failure.

#include <CLI11.hpp>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "fuzzynv/error.hpp"
#include "fuzzynv/experiments/commands.hpp"
#include "fuzzynv/experiments/scenario.hpp"
#include "fuzzynv/verification/acceptance.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kConfigError = 2;
constexpr int kNumericalError = 3;

struct Args {
  std::string config;
  std::string out;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  bool svg = false;
};

void add_common(CLI::App* sub, Args& a, bool config_required) {
  auto* opt = sub->add_option("--config", a.config, "scenario JSON file");
  if (config_required) opt->required()->check(CLI::ExistingFile);
  sub->add_option("--out", a.out, "output directory (default: output_dir from the config)");
  sub->add_option("--seed", a.seed, "override the simulation seed / acceptance base seed");
  sub->add_option("--threads", a.threads, "worker threads, 0 for all cores")->check(CLI::Range(0u, 1024u));
  sub->add_flag("--svg", a.svg, "also write SVG line plots");
}

int run_table(fuzzynv::experiments::Command cmd, const Args& a, bool seed_given) {
  using namespace fuzzynv::experiments;
  const ScenarioConfig cfg = load_scenario(a.config);
  RunOptions opts;
  if (seed_given) opts.seed = a.seed;
  opts.threads = a.threads;
  const std::filesystem::path out = std::filesystem::path(a.out.empty() ? cfg.output_dir : a.out);
  for (const auto& f : run_and_write(cmd, cfg, out, a.svg, opts)) std::cout << f.string() << '\n';
  return kOk;
}

int run_verify(const Args& a, bool seed_given) {
  using namespace fuzzynv::verification;
  AcceptanceOptions o;
  if (seed_given) o.seed = a.seed;
  if (!a.out.empty()) o.scratch_dir = std::filesystem::path(a.out) / "determinism";
  bool all = true;
  run_acceptance(o, [&](const CriterionResult& r) {
    std::cout << format_result(r) << std::endl;
    all = all && r.passed;
  });
  std::cout << (all ? "all criteria passed" : "some criteria failed") << '\n';
  return all ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  using fuzzynv::experiments::Command;
  CLI::App app{"Fuzzy Gaussian-mixture newsvendor experiments"};
  app.require_subcommand(1);
  Args args;

  std::vector<std::pair<CLI::App*, Command>> tables;
  for (Command c : fuzzynv::experiments::kTableCommands) {
    auto* sub = app.add_subcommand(std::string(fuzzynv::experiments::to_string(c)));
    add_common(sub, args, true);
    tables.emplace_back(sub, c);
  }
  auto* verify = app.add_subcommand("verify", "run the acceptance suite");
  add_common(verify, args, false);
  tables[0].first->description("defuzzified demand density per weight and beta");
  tables[1].first->description("defuzzified demand mean and variance per beta");
  tables[2].first->description("order quantities per model and beta");
  tables[3].first->description("optimal expected profit and profit variance per beta");
  tables[4].first->description("benefit and variance change against fixed-weight policies");
  tables[5].first->description("visitor simulation and derived fuzzy weight");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    for (const auto& [sub, cmd] : tables) {
      if (sub->parsed()) return run_table(cmd, args, sub->count("--seed") > 0);
    }
    return run_verify(args, verify->count("--seed") > 0);
  } catch (const fuzzynv::experiments::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const fuzzynv::InvalidArgument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kConfigError;
  } catch (const fuzzynv::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << " (residual " << e.residual() << ")\n";
    return kNumericalError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumericalError;
  }
}
