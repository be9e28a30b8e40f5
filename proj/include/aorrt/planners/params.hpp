#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aorrt/core/errors.hpp"
#include "aorrt/metric/metric.hpp"

namespace aorrt {

enum class PlannerVariant { rrt, ao_rrt, ao_rrt_pruning, multi_tree_ao, hybrid, sst };

inline std::string_view variant_name(PlannerVariant v) {
  switch (v) {
    case PlannerVariant::rrt: return "rrt";
    case PlannerVariant::ao_rrt: return "ao-rrt";
    case PlannerVariant::ao_rrt_pruning: return "ao-rrt-prune";
    case PlannerVariant::multi_tree_ao: return "multi-tree";
    case PlannerVariant::hybrid: return "hybrid";
    case PlannerVariant::sst: return "sst";
  }
  return "?";
}

inline PlannerVariant parse_variant(std::string_view name) {
  for (auto v : {PlannerVariant::rrt, PlannerVariant::ao_rrt, PlannerVariant::ao_rrt_pruning,
                 PlannerVariant::multi_tree_ao, PlannerVariant::hybrid, PlannerVariant::sst}) {
    if (variant_name(v) == name) return v;
  }
  throw ParameterError("unknown planner '" + std::string(name) +
                       "' (expected rrt, ao-rrt, ao-rrt-prune, multi-tree, hybrid or sst)");
}

struct PlannerParams {
  double t_prop = 1.0;
  /// Initial cost bound for c_rand sampling.
  double c_max = 10.0;
  /// Iteration cap k. At least one of `iterations` and `time_budget` must be set;
  /// when both are, whichever is reached first stops the run.
  std::optional<std::uint64_t> iterations;
  std::optional<double> time_budget;
  MetricWeights weights;
  /// Collision-check spacing in seconds; 0 checks every integrator sample.
  double collision_resolution = 0.0;
  /// Integrator step; 0 selects min(t_prop / 20, 0.02).
  double integrator_step = 0.0;
  bool adaptive_cmax = true;
  bool pruning = false;
  double goal_bias = 0.05;

  double shrink_factor = 1.0;
  std::size_t max_rounds = 10;

  double sst_delta_bn = 0.1;
  double sst_delta_s = 0.02;

  /// Best-cost snapshots are taken when the run passes each of these
  /// (iterations in iteration mode, seconds in time-budget mode).
  std::vector<double> checkpoints;

  bool time_mode() const { return time_budget.has_value() && !iterations.has_value(); }

  void validate() const {
    if (!(t_prop > 0.0) || !std::isfinite(t_prop)) throw ParameterError("t_prop must be positive");
    if (!(c_max > 0.0) || !std::isfinite(c_max)) throw ParameterError("c_max must be positive");
    if (!iterations && !time_budget) throw ParameterError("either iterations or a time budget is required");
    if (time_budget && !(*time_budget >= 0.0)) throw ParameterError("time budget must be non-negative");
    weights.validate();
    if (!(collision_resolution >= 0.0)) throw ParameterError("collision resolution must be non-negative");
    if (!(integrator_step >= 0.0)) throw ParameterError("integrator step must be non-negative");
    if (!(goal_bias >= 0.0 && goal_bias < 1.0)) throw ParameterError("goal_bias must lie in [0, 1)");
    if (!(shrink_factor > 0.0 && shrink_factor <= 1.0)) throw ParameterError("shrink_factor must lie in (0, 1]");
    if (max_rounds == 0) throw ParameterError("max_rounds must be positive");
    if (!(sst_delta_bn > 0.0) || !(sst_delta_s > 0.0)) throw ParameterError("SST radii must be positive");
    for (std::size_t i = 1; i < checkpoints.size(); ++i) {
      if (!(checkpoints[i] > checkpoints[i - 1])) throw ParameterError("checkpoints must be strictly increasing");
    }
  }
};

/// Parameters with the variant's fixed switches applied.
inline PlannerParams params_for_variant(PlannerParams p, PlannerVariant v) {
  if (v == PlannerVariant::ao_rrt_pruning) p.pruning = true;
  if (v == PlannerVariant::ao_rrt || v == PlannerVariant::rrt || v == PlannerVariant::sst) p.pruning = false;
  return p;
}

}  // namespace aorrt
