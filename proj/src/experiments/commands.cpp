#include "fuzzynv/experiments/commands.hpp"

#include "fuzzynv/demand.hpp"
#include "fuzzynv/experiments/parallel.hpp"
#include "fuzzynv/newsvendor.hpp"
#include "fuzzynv/optimizer.hpp"
#include "fuzzynv/review_sim.hpp"

namespace fuzzynv::experiments {
namespace {

using Row = std::vector<Cell>;

// Flattened (weight, cost, beta) grid in lexicographic order.
struct GridPoint {
  std::size_t w, k, b;
};

std::vector<GridPoint> grid(const ScenarioConfig& cfg, bool with_costs) {
  std::vector<GridPoint> out;
  const std::size_t nk = with_costs ? cfg.costs.size() : 1;
  for (std::size_t w = 0; w < cfg.weights.size(); ++w) {
    for (std::size_t k = 0; k < nk; ++k) {
      for (std::size_t b = 0; b < cfg.beta_grid.size(); ++b) out.push_back({w, k, b});
    }
  }
  return out;
}

DefuzzifiedDemand demand_at(const ScenarioConfig& cfg, const GridPoint& g) {
  return {cfg.weights[g.w].p_tilde, RiskFactor(cfg.beta_grid[g.b]), cfg.c1, cfg.c2};
}

std::vector<Row> flatten(std::vector<std::vector<Row>> blocks) {
  std::vector<Row> rows;
  for (auto& b : blocks) {
    for (auto& r : b) rows.push_back(std::move(r));
  }
  return rows;
}

Table density(const ScenarioConfig& cfg, const RunOptions& opts) {
  const auto pts = grid(cfg, false);
  std::vector<std::vector<Row>> blocks(pts.size());
  parallel_for(
      pts.size(),
      [&](std::size_t i) {
        const DefuzzifiedDemand d = demand_at(cfg, pts[i]);
        const auto& xs = cfg.density_grid;
        std::vector<double> cdf(xs.size()), pdf(xs.size());
        d.evaluate_grid(xs, cdf, pdf);
        for (std::size_t j = 0; j < xs.size(); ++j) {
          blocks[i].push_back({cfg.weights[pts[i].w].name, d.beta(), xs[j], pdf[j], cdf[j]});
        }
      },
      opts.threads);
  return {"density", {"weight", "beta", "x", "pdf", "cdf"}, flatten(std::move(blocks)), {"x", {"pdf"}, {"weight", "beta"}}};
}

Table moments(const ScenarioConfig& cfg, const RunOptions& opts) {
  const auto pts = grid(cfg, false);
  std::vector<Row> rows(pts.size());
  parallel_for(
      pts.size(),
      [&](std::size_t i) {
        const DefuzzifiedDemand d = demand_at(cfg, pts[i]);
        const DemandMoments m = d.moments();
        rows[i] = {cfg.weights[pts[i].w].name, d.beta(), m.mean, m.variance};
      },
      opts.threads);
  return {"moments", {"weight", "beta", "mean", "variance"}, std::move(rows), {"beta", {"mean", "variance"}, {"weight"}}};
}

struct ReferenceQuantities {
  double q_mean_weight, q_p0, q_p1;
};

ReferenceQuantities reference_quantities(const ScenarioConfig& cfg, std::size_t w, std::size_t k) {
  const CostStructure& costs = cfg.costs[k].costs;
  return {optimal_q_mean_weight(cfg.weights[w].p_tilde, cfg.c1, cfg.c2, costs),
          optimal_q_crisp_weight(0.0, cfg.c1, cfg.c2, costs), optimal_q_crisp_weight(1.0, cfg.c1, cfg.c2, costs)};
}

Table optimize(const ScenarioConfig& cfg, const RunOptions& opts) {
  const auto pts = grid(cfg, true);
  std::vector<Row> rows(pts.size());
  parallel_for(
      pts.size(),
      [&](std::size_t i) {
        const GridPoint& g = pts[i];
        const ReferenceQuantities ref = reference_quantities(cfg, g.w, g.k);
        const double q = optimal_q_beta(demand_at(cfg, g), cfg.costs[g.k].costs);
        rows[i] = {cfg.weights[g.w].name, cfg.costs[g.k].name, cfg.beta_grid[g.b], ref.q_mean_weight, ref.q_p0,
                   ref.q_p1, q};
      },
      opts.threads);
  return {"optimize",
          {"weight", "cost", "beta", "q_mean_weight", "q_p0", "q_p1", "q_fuzzy"},
          std::move(rows),
          {"beta", {"q_mean_weight", "q_p0", "q_p1", "q_fuzzy"}, {"weight", "cost"}}};
}

Table profit(const ScenarioConfig& cfg, const RunOptions& opts) {
  const auto pts = grid(cfg, true);
  std::vector<Row> rows(pts.size());
  parallel_for(
      pts.size(),
      [&](std::size_t i) {
        const GridPoint& g = pts[i];
        const DefuzzifiedDemand d = demand_at(cfg, g);
        const CostStructure& k = cfg.costs[g.k].costs;
        const ProfitStats s = profit_stats(DemandDistribution::of(d), optimal_q_beta(d, k), k);
        rows[i] = {cfg.weights[g.w].name, cfg.costs[g.k].name, d.beta(), s.order_q, s.expected_profit,
                   s.profit_variance};
      },
      opts.threads);
  return {"profit",
          {"weight", "cost", "beta", "q_fuzzy", "expected_profit", "profit_variance"},
          std::move(rows),
          {"beta", {"expected_profit", "profit_variance"}, {"weight", "cost"}}};
}

Cell optional_cell(const std::optional<double>& v) { return v ? Cell{*v} : Cell{}; }
Cell status_cell(const std::optional<double>& v) { return std::string(v ? "ok" : "undefined"); }

Table compare(const ScenarioConfig& cfg, const RunOptions& opts) {
  const auto pts = grid(cfg, true);
  std::vector<std::vector<Row>> blocks(pts.size());
  parallel_for(
      pts.size(),
      [&](std::size_t i) {
        const GridPoint& g = pts[i];
        const DefuzzifiedDemand d = demand_at(cfg, g);
        const CostStructure& k = cfg.costs[g.k].costs;
        const ReferenceQuantities ref = reference_quantities(cfg, g.w, g.k);
        const std::pair<const char*, double> candidates[] = {
            {"p0", ref.q_p0}, {"p1", ref.q_p1}, {"mean_weight", ref.q_mean_weight}};
        for (const auto& [name, q] : candidates) {
          const PolicyComparison c = compare_policies(q, d, k);
          blocks[i].push_back({cfg.weights[g.w].name, cfg.costs[g.k].name, d.beta(), std::string(name),
                               c.q_candidate, c.q_optimal, c.expected_candidate, c.expected_optimal,
                               c.variance_candidate, c.variance_optimal, optional_cell(c.benefit_ratio),
                               status_cell(c.benefit_ratio), optional_cell(c.variance_change),
                               status_cell(c.variance_change)});
        }
      },
      opts.threads);
  return {"compare",
          {"weight", "cost", "beta", "candidate", "q_candidate", "q_fuzzy", "expected_candidate", "expected_fuzzy",
           "variance_candidate", "variance_fuzzy", "benefit", "benefit_status", "variance_change",
           "variance_status"},
          flatten(std::move(blocks)),
          {"beta", {"benefit", "variance_change"}, {"weight", "cost", "candidate"}}};
}

Row weight_cells(const OrderCounts& c, const WeightLegs& w) {
  Row r{std::string(to_string(w.status))};
  if (w.status == WeightStatus::undefined_p0) {
    for (int i = 0; i < 6; ++i) r.emplace_back();
  } else {
    r.emplace_back(w.p0);
    for (double p : w.legs) r.emplace_back(p);
    r.emplace_back(w.alpha_scale);
  }
  for (std::int64_t n : {c.n_ric, c.n1_rsc, c.n2_rsc, c.n0_rsc, c.n1_p, c.n2_p, c.n0_p}) r.emplace_back(n);
  return r;
}

const std::vector<std::string> kWeightColumns{"status", "p0",     "p1",     "p2",     "p3",   "p4",   "alpha_scale",
                                              "n_ric",  "n1_rsc", "n2_rsc", "n0_rsc", "n1_p", "n2_p", "n0_p"};

std::vector<Table> simulate_p(const ScenarioConfig& cfg, const RunOptions& opts) {
  if (!cfg.simulation) throw InvalidArgument("simulate-p needs a \"simulation\" section in the scenario");
  SimulationConfig sim = *cfg.simulation;
  if (opts.seed) sim.population.seed = *opts.seed;

  Table sweep{"simulate_p", {"mean_rating"}, {}, {"mean_rating", {"p1", "p2", "p3", "p4"}, {}}};
  sweep.columns.insert(sweep.columns.end(), kWeightColumns.begin(), kWeightColumns.end());
  for (const SweepRow& r : rating_sweep(sim.population, sim.rating_grid)) {
    Row row{r.mean_rating};
    for (Cell& c : weight_cells(r.counts, r.weight)) row.push_back(std::move(c));
    sweep.rows.push_back(std::move(row));
  }

  Table reps{"simulate_p_replicates", {"seed", "mean_rating"}, {}, {"seed", {"p1", "p2", "p3", "p4"}, {}}};
  reps.columns.insert(reps.columns.end(), kWeightColumns.begin(), kWeightColumns.end());
  reps.rows.resize(static_cast<std::size_t>(sim.replicates));
  parallel_for(
      reps.rows.size(),
      [&](std::size_t i) {
        PopulationConfig p = sim.population;
        p.seed = sim.population.seed + i;
        const OrderCounts counts = simulate_visitors(p);
        Row row{static_cast<std::int64_t>(p.seed), p.mean_rating};
        for (Cell& c : weight_cells(counts, compute_weight_legs(counts))) row.push_back(std::move(c));
        reps.rows[i] = std::move(row);
      },
      opts.threads);
  return {std::move(sweep), std::move(reps)};
}

}  // namespace

std::string_view to_string(Command c) noexcept {
  switch (c) {
    case Command::density:
      return "density";
    case Command::moments:
      return "moments";
    case Command::optimize:
      return "optimize";
    case Command::profit:
      return "profit";
    case Command::compare:
      return "compare";
    case Command::simulate_p:
      return "simulate-p";
  }
  return "unknown";
}

std::optional<Command> command_from_string(std::string_view s) noexcept {
  for (Command c : kTableCommands) {
    if (to_string(c) == s) return c;
  }
  return std::nullopt;
}

std::vector<Table> run_command(Command c, const ScenarioConfig& cfg, const RunOptions& opts) {
  switch (c) {
    case Command::density:
      return {density(cfg, opts)};
    case Command::moments:
      return {moments(cfg, opts)};
    case Command::optimize:
      return {optimize(cfg, opts)};
    case Command::profit:
      return {profit(cfg, opts)};
    case Command::compare:
      return {compare(cfg, opts)};
    case Command::simulate_p:
      return simulate_p(cfg, opts);
  }
  throw InvalidArgument("unknown command");
}

std::vector<std::filesystem::path> run_and_write(Command c, const ScenarioConfig& cfg,
                                                 const std::filesystem::path& out_dir, bool svg,
                                                 const RunOptions& opts) {
  std::vector<std::filesystem::path> files;
  for (const Table& t : run_command(c, cfg, opts)) {
    for (auto& f : write_table(t, out_dir, svg)) files.push_back(std::move(f));
  }
  return files;
}

}  // namespace fuzzynv::experiments
