#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "aorrt/core/types.hpp"
#include "aorrt/geometry/collision.hpp"
#include "aorrt/planners/params.hpp"
#include "aorrt/planners/plan_tree.hpp"

namespace aorrt {

/// Borrowed view of one planning query.
template <class S>
struct Problem {
  const S& system;
  const ObstacleSet& obstacles;
  State x_init;
  GoalRegion goal;
};

struct CostLogEntry {
  std::uint64_t iteration = 0;
  double seconds = 0.0;
  double cost = 0.0;
};

struct CheckpointRecord {
  double checkpoint = 0.0;
  std::optional<double> best_cost;
  std::size_t nodes = 0;
  std::size_t pruned = 0;
};

struct Solution {
  double cost = 0.0;
  Trajectory trajectory;
  std::vector<ControlSegment> schedule;
};

struct PlanResult {
  std::optional<Solution> best;
  std::optional<double> first_cost;
  std::size_t nodes = 0;
  std::size_t pruned = 0;
  std::uint64_t iterations = 0;
  double seconds = 0.0;
  std::size_t diverged = 0;
  std::vector<CostLogEntry> cost_log;
  std::vector<CheckpointRecord> checkpoints;

  /// Filled when verification is requested: full-tree recomputation (summed
  /// over all trees a planner built) and the control-schedule replay.
  std::optional<TreeCheck> tree_check;
  std::optional<bool> replay_ok;
};

struct Snapshot {
  std::optional<double> best_cost;
  std::size_t nodes = 0;
  std::size_t pruned = 0;
};

/// Stop conditions and checkpoint bookkeeping shared by all planners.
/// The wall clock is read every 64 iterations.
class RunMonitor {
 public:
  static constexpr std::uint64_t kClockEvery = 64;

  explicit RunMonitor(const PlannerParams& p)
      : iterations_(p.iterations), budget_(p.time_budget), time_mode_(p.time_mode()), checkpoints_(p.checkpoints),
        start_(std::chrono::steady_clock::now()) {}

  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

  /// Called before iteration `done` (the number completed so far).
  template <class SnapFn>
  bool keep_going(std::uint64_t done, SnapFn&& snap) {
    if (!time_mode_) {
      while (next_ < checkpoints_.size() && static_cast<double>(done) >= checkpoints_[next_]) record(snap());
    }
    if (iterations_ && done >= *iterations_) return false;
    if (budget_ && done % kClockEvery == 0) {
      const double now = elapsed();
      if (time_mode_) {
        while (next_ < checkpoints_.size() && now >= checkpoints_[next_]) record(snap());
      }
      if (now >= *budget_) return false;
    }
    return true;
  }

  /// Records every checkpoint not yet reached with the final state.
  template <class SnapFn>
  std::vector<CheckpointRecord> finish(SnapFn&& snap) {
    while (next_ < checkpoints_.size()) record(snap());
    return std::move(records_);
  }

 private:
  void record(const Snapshot& s) {
    records_.push_back(CheckpointRecord{checkpoints_[next_], s.best_cost, s.nodes, s.pruned});
    ++next_;
  }

  std::optional<std::uint64_t> iterations_;
  std::optional<double> budget_;
  bool time_mode_;
  std::vector<double> checkpoints_;
  std::size_t next_ = 0;
  std::vector<CheckpointRecord> records_;
  std::chrono::steady_clock::time_point start_;
};

/// Collision spacing actually used: the configured resolution, or one check
/// per integrator sample.
inline double effective_resolution(const PlannerParams& p, const IntegratorConfig& cfg) {
  return p.collision_resolution > 0.0 ? p.collision_resolution : cfg.step * (1.0 + 1e-9);
}

inline IntegratorConfig integrator_for(const PlannerParams& p) {
  return IntegratorConfig::for_horizon(p.t_prop, p.integrator_step);
}

/// Uniform point of the goal ball (projected coordinates), other coordinates
/// uniform over the state bounds.
inline State sample_goal(RandomStream& rng, const GoalRegion& goal, const StateBox& bounds) {
  State x = rng.uniform_in(bounds);
  const std::size_t k = goal.projection.size();
  std::vector<double> off(k);
  for (;;) {
    double s = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      off[i] = rng.uniform(-goal.radius, goal.radius);
      s += off[i] * off[i];
    }
    if (s <= goal.radius * goal.radius) break;
  }
  for (std::size_t i = 0; i < k; ++i) x[goal.projection[i]] = goal.center[i] + off[i];
  return x;
}

/// Solution record for node `id` of `tree`, with the path rebuilt by replay.
template <class S>
Solution make_solution(const PlanTree& tree, NodeId id, const S& sys, const IntegratorConfig& cfg) {
  Solution s;
  s.cost = tree[id].y.c;
  s.schedule = tree.control_schedule(id);
  s.trajectory = trace_path(tree, id, sys, cfg);
  return s;
}

/// Replays the schedule from x_init and checks it reproduces the reported
/// trajectory exactly, ends in the goal, and accumulates the reported cost.
template <class S>
bool replay_matches(const Solution& sol, const Problem<S>& prob, const IntegratorConfig& cfg, double resolution) {
  const Trajectory t = replay_schedule(prob.system, prob.x_init, sol.schedule, cfg);
  if (t.samples.size() != sol.trajectory.samples.size()) return false;
  for (std::size_t i = 0; i < t.samples.size(); ++i) {
    if (!bit_equal(t.samples[i].time, sol.trajectory.samples[i].time)) return false;
    if (!bit_equal(t.samples[i].state, sol.trajectory.samples[i].state)) return false;
  }
  if (!bit_equal(t.cost, sol.cost)) return false;
  if (!prob.goal.contains(t.final_state())) return false;
  return collision_free(t, prob.obstacles, resolution);
}

}  // namespace aorrt
