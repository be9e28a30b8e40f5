#pragma once

#include <variant>

#include "aorrt/planners/ao_rrt.hpp"
#include "aorrt/planners/hybrid.hpp"
#include "aorrt/planners/multi_tree.hpp"
#include "aorrt/planners/sst.hpp"
#include "aorrt/scenarios/scenario.hpp"

namespace aorrt {

template <DynamicalSystem S>
PlanResult plan(const Problem<S>& prob, const PlannerParams& params, PlannerStreams streams, PlannerVariant variant,
                const RunOptions& opts = {}) {
  const PlannerParams p = params_for_variant(params, variant);
  using Mode = typename AoRrtPlanner<S>::Mode;
  switch (variant) {
    case PlannerVariant::rrt: return run_ao_rrt(prob, p, std::move(streams), Mode::rrt, opts);
    case PlannerVariant::ao_rrt:
    case PlannerVariant::ao_rrt_pruning: return run_ao_rrt(prob, p, std::move(streams), Mode::ao, opts);
    case PlannerVariant::multi_tree_ao: return run_multi_tree(prob, p, std::move(streams), opts);
    case PlannerVariant::hybrid: return run_hybrid(prob, p, std::move(streams), opts);
    case PlannerVariant::sst: return run_sst(prob, p, std::move(streams), opts);
  }
  throw ParameterError("unknown planner variant");
}

/// Validates the scenario, then runs `variant` on it.
inline PlanResult plan(const Scenario& sc, const PlannerParams& params, PlannerStreams streams, PlannerVariant variant,
                       const RunOptions& opts = {}) {
  sc.validate();
  return std::visit(
      [&](const auto& sys) {
        const Problem<std::decay_t<decltype(sys)>> prob{sys, sc.obstacles, sc.x_init, sc.goal};
        return plan(prob, params, std::move(streams), variant, opts);
      },
      sc.system);
}

}  // namespace aorrt
