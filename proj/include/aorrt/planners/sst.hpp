#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "aorrt/core/random.hpp"
#include "aorrt/metric/kd_tree.hpp"
#include "aorrt/planners/ao_rrt.hpp"

namespace aorrt {

/// Stable sparse RRT baseline.
///
/// Distances are taken in normalized state units (each axis scaled to [0, 1]
/// by the state bounds). Selection picks the cheapest active node within
/// delta_bn of the sample (the nearest active node when none is that close).
/// Each witness point keeps one representative; a new node is kept only if it
/// is cheaper than the representative of its witness, which is then
/// deactivated, and inactive leaves are removed. Nodes on the current best
/// path are never removed.
template <DynamicalSystem S>
class SstPlanner {
 public:
  SstPlanner(const Problem<S>& prob, PlannerParams params, PlannerStreams streams)
      : prob_(prob),
        params_(std::move(params)),
        streams_(std::move(streams)),
        cfg_(integrator_for(params_)),
        resolution_(effective_resolution(params_, cfg_)),
        dim_(prob.system.state_dim()),
        metric_{dim_},
        active_(dim_),
        witnesses_(dim_),
        tree_(prob.x_init) {
    const State q = normalize(prob.x_init);
    active_.insert(tree_.root(), q.span());
    active_flag_.push_back(1);
    witnesses_.insert(0, q.span());
    witness_rep_.push_back(tree_.root());
    if (prob_.goal.contains(prob_.x_init)) set_best(tree_.root(), 0);
  }

  const PlanTree& tree() const { return tree_; }
  const IntegratorConfig& integrator() const { return cfg_; }
  double resolution() const { return resolution_; }
  std::optional<NodeId> best_node() const { return best_; }
  double best_cost() const { return best_ ? tree_[*best_].y.c : std::numeric_limits<double>::infinity(); }
  const std::vector<CostLogEntry>& cost_log() const { return log_; }
  std::optional<double> first_cost() const { return first_cost_; }
  std::size_t pruned() const { return tree_.removed_count(); }
  std::size_t diverged() const { return diverged_; }
  std::size_t witness_count() const { return witness_rep_.size(); }
  bool active(NodeId id) const { return id < active_flag_.size() && active_flag_[id]; }
  void set_clock(const RunMonitor* clock) { clock_ = clock; }

  Snapshot snapshot() const {
    Snapshot s;
    if (best_) s.best_cost = best_cost();
    s.nodes = tree_.live_count();
    s.pruned = pruned();
    return s;
  }

  StepResult step(std::uint64_t iteration) {
    const State x_rand = sample_state();
    const NodeId from = best_near(normalize(x_rand));
    const double t = streams_.duration.uniform(0.0, params_.t_prop);
    const Control u = streams_.control.uniform_in(prob_.system.control_bounds());
    return extend(from, u, t, iteration);
  }

  /// Propagates from `from` and applies the witness acceptance rule.
  StepResult extend(NodeId from, const Control& u, double t, std::uint64_t iteration) {
    if (!(t > 0.0)) return {StepOutcome::zero_duration};
    const AugmentedState& y0 = tree_[from].y;
    const auto validity = [this](const State& x) { return prob_.obstacles.is_free(x); };
    const SegmentChecker<decltype(validity)> checker(validity, resolution_);
    State prev = y0.x;
    double t_prev = 0.0;
    JointPassResult r;
    try {
      r = integrate_joint(prob_.system, y0.x, y0.c, u, t, cfg_, [&](double time, const State& x, double) {
        if (!checker.segment(t_prev, prev, time, x)) return false;
        prev = x;
        t_prev = time;
        return true;
      });
    } catch (const PropagationDivergedError&) {
      ++diverged_;
      return {StepOutcome::diverged};
    }
    if (r.aborted) return {StepOutcome::collision};

    const State q = normalize(r.x);
    std::size_t w = witness_rep_.size();
    if (!witnesses_.empty()) {
      const auto [wid, d2] = witnesses_.nearest(q.span(), metric_);
      if (d2 <= params_.sst_delta_s * params_.sst_delta_s) w = wid;
    }
    if (w == witness_rep_.size()) {
      witnesses_.insert(static_cast<NodeId>(w), q.span());
      witness_rep_.push_back(kNoNode);
    }
    const NodeId rep = witness_rep_[w];
    if (rep != kNoNode && tree_[rep].y.c <= r.c) return {StepOutcome::dominated};

    const AugmentedState y_new{r.x, r.c};
    const NodeId id = tree_.add(from, y_new, ControlSegment{u, t}, r.increment, iteration, NodeOrigin::ao);
    active_.insert(id, q.span());
    active_flag_.resize(id + 1, 0);
    active_flag_[id] = 1;
    witness_rep_[w] = id;
    StepResult out{StepOutcome::added, id, false};
    if (prob_.goal.contains(y_new.x) && y_new.c < best_cost()) {
      set_best(id, iteration);
      out.improved = true;
    }
    if (rep != kNoNode) deactivate(rep);
    return out;
  }

 private:
  State normalize(const State& x) const {
    const StateBox& b = prob_.system.state_bounds();
    State q(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
      const double span = b.hi[i] - b.lo[i];
      q[i] = span > 0.0 ? (x[i] - b.lo[i]) / span : 0.0;
    }
    return q;
  }

  State sample_state() {
    if (params_.goal_bias > 0.0 && streams_.goal.uniform01() < params_.goal_bias) {
      return sample_goal(streams_.goal, prob_.goal, prob_.system.state_bounds());
    }
    return streams_.state.uniform_in(prob_.system.state_bounds());
  }

  NodeId best_near(const State& q) const {
    NodeId sel = kNoNode;
    double sel_c = std::numeric_limits<double>::infinity();
    active_.within(q.span(), params_.sst_delta_bn * params_.sst_delta_bn, metric_, [&](NodeId id, double) {
      const double c = tree_[id].y.c;
      if (c < sel_c || (c == sel_c && id < sel)) {
        sel = id;
        sel_c = c;
      }
    });
    if (sel == kNoNode) sel = active_.nearest(q.span(), metric_).first;
    return sel;
  }

  void deactivate(NodeId id) {
    if (!active_flag_[id]) return;
    active_flag_[id] = 0;
    active_.erase(id);
    NodeId v = id;
    while (v != tree_.root() && tree_.live(v) && !active_flag_[v] && tree_[v].live_children == 0 && !protected_(v)) {
      const NodeId parent = tree_[v].parent;
      tree_.remove_leaf(v);
      v = parent;
    }
  }

  bool protected_(NodeId id) const {
    if (!best_) return false;
    return id < on_best_path_.size() && on_best_path_[id];
  }

  void set_best(NodeId id, std::uint64_t iteration) {
    best_ = id;
    const double c = tree_[id].y.c;
    if (!first_cost_) first_cost_ = c;
    log_.push_back(CostLogEntry{iteration, clock_ ? clock_->elapsed() : 0.0, c});
    on_best_path_.assign(tree_.capacity(), 0);
    for (NodeId v : tree_.path_to(id)) on_best_path_[v] = 1;
  }

  Problem<S> prob_;
  PlannerParams params_;
  PlannerStreams streams_;
  IntegratorConfig cfg_;
  double resolution_;
  std::size_t dim_;
  EuclideanMetric metric_;
  KdTree<EuclideanMetric> active_;
  KdTree<EuclideanMetric> witnesses_;
  PlanTree tree_;
  std::vector<char> active_flag_;
  std::vector<NodeId> witness_rep_;
  std::vector<char> on_best_path_;
  std::optional<NodeId> best_;
  std::optional<double> first_cost_;
  std::vector<CostLogEntry> log_;
  std::size_t diverged_ = 0;
  const RunMonitor* clock_ = nullptr;
};

template <DynamicalSystem S>
PlanResult run_sst(const Problem<S>& prob, const PlannerParams& params, PlannerStreams streams,
                   const RunOptions& opts = {}) {
  params.validate();
  SstPlanner<S> pl(prob, params, std::move(streams));
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
