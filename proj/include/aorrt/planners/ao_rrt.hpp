#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <utility>

#include "aorrt/core/random.hpp"
#include "aorrt/metric/nn_index.hpp"
#include "aorrt/planners/run.hpp"

namespace aorrt {

/// How a sampled iteration ended.
enum class StepOutcome : std::uint8_t { added, collision, over_bound, dominated, zero_duration, diverged };

struct StepResult {
  StepOutcome outcome = StepOutcome::collision;
  NodeId node = kNoNode;
  bool improved = false;
};

/// Single-tree planner in the state-cost space.
///
/// In `ao` mode each iteration draws (x_rand, c_rand), picks the nearest node
/// under the weighted metric and extends it by a random control for a random
/// duration; the cost coordinate is integrated jointly with the state. In
/// `rrt` mode the cost coordinate is ignored by sampling and nearest-neighbour
/// selection (w_c = 0, no c_rand draw), which is the kinodynamic RRT baseline.
template <DynamicalSystem S>
class AoRrtPlanner {
 public:
  enum class Mode { ao, rrt };

  AoRrtPlanner(const Problem<S>& prob, PlannerParams params, PlannerStreams streams, Mode mode = Mode::ao,
               std::optional<double> cost_bound = std::nullopt)
      : prob_(prob),
        params_(std::move(params)),
        streams_(std::move(streams)),
        mode_(mode),
        cost_bound_(cost_bound),
        cfg_(integrator_for(params_)),
        resolution_(effective_resolution(params_, cfg_)),
        weights_(mode == Mode::ao ? params_.weights : MetricWeights{params_.weights.w_x > 0.0 ? params_.weights.w_x : 1.0, 0.0}),
        index_(prob.system.state_dim(), weights_),
        tree_(prob.x_init) {
    index_.insert(tree_.root(), tree_[tree_.root()].y);
    if (prob_.goal.contains(prob_.x_init)) set_best(tree_.root(), 0);
  }

  const PlanTree& tree() const { return tree_; }
  const NnIndex& index() const { return index_; }
  const PlannerParams& params() const { return params_; }
  const IntegratorConfig& integrator() const { return cfg_; }
  double resolution() const { return resolution_; }
  PlannerStreams& streams() { return streams_; }
  Mode mode() const { return mode_; }
  const ControlBox& control_bounds() const { return prob_.system.control_bounds(); }

  std::optional<NodeId> best_node() const { return best_; }
  double best_cost() const { return best_ ? tree_[*best_].y.c : std::numeric_limits<double>::infinity(); }
  const std::vector<CostLogEntry>& cost_log() const { return log_; }
  std::optional<double> first_cost() const { return first_cost_; }
  std::size_t pruned() const { return pruned_; }
  std::size_t diverged() const { return diverged_; }

  /// Upper end of the c_rand interval.
  double current_cmax() const {
    if (cost_bound_) return *cost_bound_;
    if (!params_.adaptive_cmax) return params_.c_max;
    if (best_) return best_cost();
    const double m = tree_.max_cost();
    return m > 0.0 ? m : params_.c_max;
  }

  /// Nodes whose cost exceeds this bound are rejected.
  double node_bound() const {
    double b = cost_bound_.value_or(std::numeric_limits<double>::infinity());
    if (params_.pruning && best_) b = std::min(b, best_cost());
    return b;
  }

  /// One sampling iteration.
  StepResult step(std::uint64_t iteration) {
    AugmentedState y_rand;
    y_rand.x = sample_state();
    if (mode_ == Mode::ao) y_rand.c = streams_.cost.uniform(0.0, current_cmax());
    const NodeId near = index_.nearest(y_rand, weights_);
    const double t = streams_.duration.uniform(0.0, params_.t_prop);
    const Control u = streams_.control.uniform_in(prob_.system.control_bounds());
    return extend(near, u, t, iteration, NodeOrigin::ao);
  }

  /// Propagates `u` for `t` from node `from`, collision-checks the edge and
  /// adds the resulting node.
  StepResult extend(NodeId from, const Control& u, double t, std::uint64_t iteration, NodeOrigin origin) {
    if (!(t > 0.0)) return {StepOutcome::zero_duration};
    const AugmentedState& y0 = tree_[from].y;
    const double bound = node_bound();
    const auto validity = [this](const State& x) { return prob_.obstacles.is_free(x); };
    const SegmentChecker<decltype(validity)> checker(validity, resolution_);
    State prev = y0.x;
    double t_prev = 0.0;
    bool over = false;
    JointPassResult r;
    try {
      r = integrate_joint(prob_.system, y0.x, y0.c, u, t, cfg_, [&](double time, const State& x, double c) {
        if (c > bound) {
          over = true;
          return false;
        }
        if (!checker.segment(t_prev, prev, time, x)) return false;
        prev = x;
        t_prev = time;
        return true;
      });
    } catch (const PropagationDivergedError&) {
      ++diverged_;
      return {StepOutcome::diverged};
    }
    if (r.aborted) return {over ? StepOutcome::over_bound : StepOutcome::collision};

    const AugmentedState y_new{r.x, r.c};
    const NodeId id = tree_.add(from, y_new, ControlSegment{u, t}, r.increment, iteration, origin);
    index_.insert(id, y_new);
    StepResult out{StepOutcome::added, id, false};
    if (prob_.goal.contains(y_new.x) && y_new.c < best_cost()) {
      set_best(id, iteration);
      out.improved = true;
    }
    return out;
  }

  Snapshot snapshot() const {
    Snapshot s;
    if (best_) s.best_cost = best_cost();
    s.nodes = tree_.live_count();
    s.pruned = pruned_;
    return s;
  }

  void set_clock(const RunMonitor* clock) { clock_ = clock; }

 private:
  State sample_state() {
    if (params_.goal_bias > 0.0 && streams_.goal.uniform01() < params_.goal_bias) {
      return sample_goal(streams_.goal, prob_.goal, prob_.system.state_bounds());
    }
    return streams_.state.uniform_in(prob_.system.state_bounds());
  }

  void set_best(NodeId id, std::uint64_t iteration) {
    best_ = id;
    const double c = tree_[id].y.c;
    if (!first_cost_) first_cost_ = c;
    log_.push_back(CostLogEntry{iteration, clock_ ? clock_->elapsed() : 0.0, c});
    if (params_.pruning) pruned_ += prune(tree_, index_, c);
  }

  Problem<S> prob_;
  PlannerParams params_;
  PlannerStreams streams_;
  Mode mode_;
  std::optional<double> cost_bound_;
  IntegratorConfig cfg_;
  double resolution_;
  MetricWeights weights_;
  NnIndex index_;
  PlanTree tree_;
  std::optional<NodeId> best_;
  std::optional<double> first_cost_;
  std::vector<CostLogEntry> log_;
  std::size_t pruned_ = 0;
  std::size_t diverged_ = 0;
  const RunMonitor* clock_ = nullptr;
};

struct RunOptions {
  /// Recompute the whole tree and replay the best schedule after the run.
  bool verify = false;
};

/// Fills the result fields shared by single-tree planners.
template <class S, class Planner>
PlanResult finish_single(const Planner& pl, const Problem<S>& prob, RunMonitor& mon, std::uint64_t iterations,
                         const RunOptions& opts) {
  PlanResult res;
  res.iterations = iterations;
  res.seconds = mon.elapsed();
  res.checkpoints = mon.finish([&] { return pl.snapshot(); });
  res.nodes = pl.tree().live_count();
  res.pruned = pl.pruned();
  res.diverged = pl.diverged();
  res.cost_log = pl.cost_log();
  res.first_cost = pl.first_cost();
  if (auto b = pl.best_node()) res.best = make_solution(pl.tree(), *b, prob.system, pl.integrator());
  if (opts.verify) {
    res.tree_check = verify_tree(pl.tree(), prob.system, pl.integrator());
    if (res.best) res.replay_ok = replay_matches(*res.best, prob, pl.integrator(), pl.resolution());
  }
  return res;
}

/// Runs AO-RRT (or the RRT baseline) until the configured stop condition.
template <DynamicalSystem S>
PlanResult run_ao_rrt(const Problem<S>& prob, const PlannerParams& params, PlannerStreams streams,
                      typename AoRrtPlanner<S>::Mode mode = AoRrtPlanner<S>::Mode::ao, const RunOptions& opts = {}) {
  params.validate();
  AoRrtPlanner<S> pl(prob, params, std::move(streams), mode);
  RunMonitor mon(params);
  pl.set_clock(&mon);
  std::uint64_t it = 0;
  while (mon.keep_going(it, [&] { return pl.snapshot(); })) {
    pl.step(it);
    ++it;
  }
  return finish_single(pl, prob, mon, it, opts);
}

}  // namespace aorrt
