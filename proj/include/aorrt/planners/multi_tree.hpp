#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "aorrt/planners/ao_rrt.hpp"

namespace aorrt {

namespace detail {

inline void accumulate(TreeCheck& into, const TreeCheck& c) {
  into.nodes_checked += c.nodes_checked;
  into.state_mismatches += c.state_mismatches;
  into.cost_mismatches += c.cost_mismatches;
  into.bookkeeping_mismatches += c.bookkeeping_mismatches;
  into.structure_errors += c.structure_errors;
  if (into.first_error.empty()) into.first_error = c.first_error;
}

}  // namespace detail

/// Restarting planner over shrinking cost bounds.
///
/// Round i grows a fresh tree whose nodes must satisfy c <= c_i and whose c_rand
/// is drawn from [0, c_i]. A round ends at its first solution cheaper than the
/// best so far, of cost s, and the next round uses c_{i+1} = shrink_factor * s.
/// Round i may use the remaining iterations (or seconds) divided by the rounds
/// left; a round that finds nothing within its share ends the run. The last round runs
/// to the stop condition and keeps every improvement it finds.
/// Nodes discarded with old trees are reported as pruned. When `bounds` is
/// given it receives the cost bound of every round started.
template <DynamicalSystem S>
PlanResult run_multi_tree(const Problem<S>& prob, const PlannerParams& params, PlannerStreams streams,
                          const RunOptions& opts = {}, std::vector<double>* bounds = nullptr) {
  params.validate();
  PlannerParams round_params = params;
  round_params.adaptive_cmax = false;
  round_params.pruning = false;

  RunMonitor mon(params);
  PlanResult res;
  std::optional<Solution> best;
  double best_cost = std::numeric_limits<double>::infinity();
  std::size_t discarded = 0;
  std::size_t current_nodes = 1;
  double bound = params.c_max;
  std::uint64_t it = 0;
  TreeCheck check;
  const auto snap = [&] {
    Snapshot s;
    if (best) s.best_cost = best_cost;
    s.nodes = current_nodes;
    s.pruned = discarded;
    return s;
  };
  const auto record = [&](const AoRrtPlanner<S>& pl) {
    best_cost = pl.best_cost();
    best = make_solution(pl.tree(), *pl.best_node(), prob.system, pl.integrator());
    if (!res.first_cost) res.first_cost = best_cost;
    res.cost_log.push_back({it - 1, mon.elapsed(), best_cost});
  };

  bool running = true;
  for (std::size_t round = 0; running; ++round) {
    const bool last = round + 1 >= params.max_rounds;
    const auto rounds_left = static_cast<double>(params.max_rounds - std::min(round, params.max_rounds - 1));
    AoRrtPlanner<S> pl(prob, round_params, std::move(streams), AoRrtPlanner<S>::Mode::ao, bound);
    if (bounds) bounds->push_back(bound);
    pl.set_clock(&mon);
    const std::uint64_t round_start_it = it;
    const double round_start_t = mon.elapsed();
    bool solved = false;
    std::uint64_t it_share = 0;
    double t_share = 0.0;
    if (params.iterations) {
      it_share = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(static_cast<double>(*params.iterations - it) / rounds_left));
    }
    if (params.time_budget) t_share = (*params.time_budget - round_start_t) / rounds_left;

    if (pl.best_node()) {
      // Start inside the goal: zero cost cannot be improved.
      best = make_solution(pl.tree(), *pl.best_node(), prob.system, pl.integrator());
      best_cost = 0.0;
      res.first_cost = 0.0;
      res.cost_log.push_back({it, mon.elapsed(), 0.0});
      running = false;
    }
    while (running && mon.keep_going(it, snap)) {
      if (!last) {
        if (params.iterations && it - round_start_it >= it_share) break;
        if (params.time_budget && (it - round_start_it) % RunMonitor::kClockEvery == 0 &&
            mon.elapsed() - round_start_t >= t_share) {
          break;
        }
      }
      const StepResult r = pl.step(it);
      ++it;
      current_nodes = pl.tree().live_count();
      if (r.improved && pl.best_cost() < best_cost) {
        record(pl);
        solved = true;
        if (!last) {
          bound = params.shrink_factor * best_cost;
          break;
        }
      }
    }
    res.diverged += pl.diverged();
    if (opts.verify) detail::accumulate(check, verify_tree(pl.tree(), prob.system, pl.integrator()));
    if (last || !running || !solved || !mon.keep_going(it, snap)) {
      running = false;
      res.nodes = pl.tree().live_count();
    } else {
      discarded += pl.tree().live_count();
      current_nodes = 1;
    }
    streams = std::move(pl.streams());
  }

  res.iterations = it;
  res.seconds = mon.elapsed();
  res.checkpoints = mon.finish(snap);
  res.pruned = discarded;
  res.best = std::move(best);
  if (opts.verify) {
    res.tree_check = check;
    if (res.best) {
      res.replay_ok = replay_matches(*res.best, prob, integrator_for(params),
                                     effective_resolution(params, integrator_for(params)));
    }
  }
  return res;
}

}  // namespace aorrt
