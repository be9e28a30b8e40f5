#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aorrt/bench/benchmark.hpp"

namespace aorrt {

struct ConvergenceConfig {
  PlannerVariant planner = PlannerVariant::ao_rrt;
  std::vector<double> epsilons;
  std::vector<std::uint64_t> k_grid;
  std::size_t trials = 30;
  std::uint64_t base_seed = 1;
  std::size_t threads = 1;
  ParamOverrides overrides;

  void validate() const {
    if (trials == 0) throw ParameterError("trials must be at least 1");
    if (epsilons.empty()) throw ParameterError("at least one epsilon is required");
    if (k_grid.empty()) throw ParameterError("the k grid is empty");
    for (double e : epsilons) {
      if (!(e >= 0.0)) throw ParameterError("epsilon must be non-negative");
    }
    for (std::size_t i = 1; i < k_grid.size(); ++i) {
      if (!(k_grid[i] > k_grid[i - 1])) throw ParameterError("the k grid must be strictly increasing");
    }
  }
};

struct ConvergenceRow {
  PlannerVariant planner;
  double epsilon = 0.0;
  std::uint64_t k = 0;
  std::size_t trials = 0;
  std::size_t failures = 0;
  double failure_rate = 0.0;
};

struct ConvergenceOutput {
  double oracle = 0.0;
  std::vector<ConvergenceRow> rows;
  /// best_cost[trial][j]: best cost after k_grid[j] iterations.
  std::vector<std::vector<std::optional<double>>> best_cost;
};

/// Empirical Pr[cost > (1 + eps) * oracle] per k; no solution counts as a failure.
///
/// Single-tree variants are prefix-consistent, so one run to max(k) with a
/// checkpoint at every grid value gives every column. Multi-tree splits its
/// iterations by round, so it is rerun for each k.
inline ConvergenceOutput convergence_experiment(const Scenario& sc, const ConvergenceConfig& cfg) {
  cfg.validate();
  sc.validate();
  if (sc.oracle == OracleKind::none) throw ParameterError("scenario '" + sc.name + "' has no cost oracle");
  ConvergenceOutput out;
  out.oracle = scenario_oracle(sc);

  PlannerParams base = sc.default_params();
  cfg.overrides.apply(base);
  const std::size_t nk = cfg.k_grid.size();
  out.best_cost.assign(cfg.trials, std::vector<std::optional<double>>(nk));
  const bool per_k = cfg.planner == PlannerVariant::multi_tree_ao;
  const std::size_t jobs = per_k ? cfg.trials * nk : cfg.trials;

  parallel_for(jobs, cfg.threads, [&](std::size_t job) {
    const std::size_t trial = per_k ? job / nk : job;
    PlannerParams p = base;
    p.time_budget.reset();
    try {
      if (per_k) {
        const std::size_t j = job % nk;
        p.iterations = cfg.k_grid[j];
        p.checkpoints.clear();
        const PlanResult r = plan(sc, p, PlannerStreams::for_trial(cfg.base_seed, trial), cfg.planner);
        if (r.best) out.best_cost[trial][j] = r.best->cost;
      } else {
        p.iterations = cfg.k_grid.back();
        p.checkpoints.assign(cfg.k_grid.begin(), cfg.k_grid.end());
        const PlanResult r = plan(sc, p, PlannerStreams::for_trial(cfg.base_seed, trial), cfg.planner);
        for (std::size_t j = 0; j < nk && j < r.checkpoints.size(); ++j) out.best_cost[trial][j] = r.checkpoints[j].best_cost;
      }
    } catch (const std::exception&) {
      // A failed trial stays unsolved at every k it did not report.
    }
  });

  for (double eps : cfg.epsilons) {
    const double threshold = (1.0 + eps) * out.oracle;
    for (std::size_t j = 0; j < nk; ++j) {
      std::size_t fails = 0;
      for (std::size_t t = 0; t < cfg.trials; ++t) {
        const auto& c = out.best_cost[t][j];
        fails += !c || *c > threshold;
      }
      out.rows.push_back(ConvergenceRow{cfg.planner, eps, cfg.k_grid[j], cfg.trials, fails,
                                        static_cast<double>(fails) / static_cast<double>(cfg.trials)});
    }
  }
  return out;
}

inline std::string convergence_csv(const ConvergenceOutput& c) {
  std::string s = "planner,epsilon,k,trials,failures,failure_rate\n";
  for (const auto& r : c.rows) {
    s += std::string(variant_name(r.planner)) + "," + fmt6(r.epsilon) + "," + std::to_string(r.k) + "," +
         std::to_string(r.trials) + "," + std::to_string(r.failures) + "," + fmt6(r.failure_rate) + "\n";
  }
  return s;
}

}  // namespace aorrt
