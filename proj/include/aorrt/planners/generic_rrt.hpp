#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "aorrt/core/random.hpp"
#include "aorrt/dynamics/integrator.hpp"
#include "aorrt/geometry/collision.hpp"
#include "aorrt/metric/kd_tree.hpp"
#include "aorrt/metric/metric.hpp"
#include "aorrt/planners/plan_tree.hpp"

namespace aorrt {

/// Textbook kinodynamic RRT over any system on its own state space, with an
/// unweighted Euclidean nearest-neighbour rule. It knows nothing about costs:
/// run on an AugmentedSystem, the cost is just the last state coordinate.
template <DynamicalSystem S>
class GenericRrt {
 public:
  struct Node {
    State x;
    NodeId parent = kNoNode;
    ControlSegment edge;
  };

  GenericRrt(const S& sys, const State& root, IntegratorConfig cfg, double resolution)
      : sys_(&sys), cfg_(cfg), resolution_(resolution), index_(sys.state_dim()) {
    nodes_.push_back(Node{root, kNoNode, {}});
    index_.insert(0, root.span());
  }

  const std::vector<Node>& nodes() const { return nodes_; }

  /// Extends the node nearest to `target` by `u` for `t`; `valid(state)`
  /// decides whether a path point is admissible. Returns the new id or kNoNode.
  template <class Valid>
  NodeId extend_towards(const State& target, const Control& u, double t, const Valid& valid) {
    const NodeId near = index_.nearest(target.span(), EuclideanMetric{sys_->state_dim()}).first;
    if (!(t > 0.0)) return kNoNode;
    const SegmentChecker<Valid> checker(valid, resolution_);
    State prev = nodes_[near].x;
    double t_prev = 0.0;
    const JointPassResult r =
        integrate_joint(*sys_, nodes_[near].x, 0.0, u, t, cfg_, [&](double time, const State& x, double) {
          if (!checker.segment(t_prev, prev, time, x)) return false;
          prev = x;
          t_prev = time;
          return true;
        });
    if (r.aborted) return kNoNode;
    const auto id = static_cast<NodeId>(nodes_.size());
    nodes_.push_back(Node{r.x, near, ControlSegment{u, t}});
    index_.insert(id, r.x.span());
    return id;
  }

 private:
  const S* sys_;
  IntegratorConfig cfg_;
  double resolution_;
  KdTree<EuclideanMetric> index_;
  std::vector<Node> nodes_;
};

/// Uniform sample of Y = X x [0, c_max] with the state part drawn from the
/// state stream and the cost part from the cost stream.
inline State sample_augmented(PlannerStreams& streams, const StateBox& x_bounds, double c_max) {
  const State x = streams.state.uniform_in(x_bounds);
  State y(x.size() + 1);
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i];
  y[x.size()] = streams.cost.uniform(0.0, c_max);
  return y;
}

}  // namespace aorrt
