#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "aorrt/core/types.hpp"
#include "aorrt/dynamics/integrator.hpp"
#include "aorrt/geometry/collision.hpp"
#include "aorrt/metric/nn_index.hpp"

namespace aorrt {

inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

/// Which step added a node.
enum class NodeOrigin : std::uint8_t { root, ao, expansion };

struct TreeNode {
  AugmentedState y;
  NodeId parent = kNoNode;
  /// Control applied from the parent. The edge trajectory is not stored; it
  /// is reproduced exactly by re-propagating this segment from the parent.
  ControlSegment edge;
  double edge_cost = 0.0;
  std::uint64_t iteration = 0;
  NodeOrigin origin = NodeOrigin::root;
  bool live = true;
  std::uint32_t live_children = 0;
};

/// Rooted tree over the state-cost space. Ids are indices and are never reused;
/// removed nodes stay in storage with live = false.
class PlanTree {
 public:
  PlanTree() = default;
  explicit PlanTree(const State& x_init) { add_root(x_init); }

  NodeId add_root(const State& x_init) {
    if (!nodes_.empty()) throw ParameterError("tree already has a root");
    TreeNode root;
    root.y = AugmentedState{x_init, 0.0};
    nodes_.push_back(root);
    live_count_ = 1;
    return 0;
  }

  NodeId root() const { return 0; }

  NodeId add(NodeId parent, const AugmentedState& y, const ControlSegment& edge, double edge_cost,
             std::uint64_t iteration, NodeOrigin origin) {
    TreeNode& p = nodes_.at(parent);
    if (!p.live) throw ParameterError("cannot attach to a removed node");
    ++p.live_children;
    TreeNode n;
    n.y = y;
    n.parent = parent;
    n.edge = edge;
    n.edge_cost = edge_cost;
    n.iteration = iteration;
    n.origin = origin;
    nodes_.push_back(n);
    ++live_count_;
    max_cost_ = std::max(max_cost_, y.c);
    return static_cast<NodeId>(nodes_.size() - 1);
  }

  const TreeNode& operator[](NodeId id) const { return nodes_[id]; }
  std::size_t capacity() const { return nodes_.size(); }
  std::size_t live_count() const { return live_count_; }
  std::size_t removed_count() const { return nodes_.size() - live_count_; }
  bool live(NodeId id) const { return id < nodes_.size() && nodes_[id].live; }

  /// Largest cost among live nodes.
  double max_cost() const { return max_cost_; }

  /// Marks a live node with no live children as removed.
  void remove_leaf(NodeId id) {
    TreeNode& n = nodes_.at(id);
    if (!n.live || n.live_children != 0 || id == root()) throw ParameterError("only live non-root leaves can be removed");
    n.live = false;
    --nodes_[n.parent].live_children;
    --live_count_;
  }

  /// Removes every live node with c > c_best (a subtree-closed set since cost
  /// is non-decreasing along tree paths). Returns the removed ids, ascending.
  std::vector<NodeId> prune_above(double c_best) {
    std::vector<NodeId> removed;
    for (std::size_t i = 1; i < nodes_.size(); ++i) {
      TreeNode& n = nodes_[i];
      if (!n.live || !(n.y.c > c_best)) continue;
      n.live = false;
      removed.push_back(static_cast<NodeId>(i));
    }
    for (NodeId id : removed) {
      const NodeId p = nodes_[id].parent;
      if (nodes_[p].live) --nodes_[p].live_children;
      nodes_[id].live_children = 0;
    }
    live_count_ -= removed.size();
    recompute_max_cost();
    return removed;
  }

  /// Node ids from the root to `id`, inclusive.
  std::vector<NodeId> path_to(NodeId id) const {
    std::vector<NodeId> path;
    for (NodeId v = id; v != kNoNode; v = nodes_.at(v).parent) path.push_back(v);
    std::reverse(path.begin(), path.end());
    return path;
  }

  /// Piecewise-constant control from the root to `id`.
  std::vector<ControlSegment> control_schedule(NodeId id) const {
    std::vector<ControlSegment> out;
    for (NodeId v : path_to(id)) {
      if (v != root()) out.push_back(nodes_[v].edge);
    }
    return out;
  }

  std::vector<NodeId> live_ids() const {
    std::vector<NodeId> out;
    out.reserve(live_count_);
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      if (nodes_[i].live) out.push_back(static_cast<NodeId>(i));
    }
    return out;
  }

 private:
  void recompute_max_cost() {
    max_cost_ = 0.0;
    for (const auto& n : nodes_) {
      if (n.live) max_cost_ = std::max(max_cost_, n.y.c);
    }
  }

  std::vector<TreeNode> nodes_;
  std::size_t live_count_ = 0;
  double max_cost_ = 0.0;
};

/// Removes nodes with c > c_best from both the tree and its index; the two
/// removal counts must agree.
inline std::size_t prune(PlanTree& tree, NnIndex& index, double c_best) {
  const std::size_t from_index = index.remove_above_cost(c_best);
  const std::size_t from_tree = tree.prune_above(c_best).size();
  if (from_index != from_tree) throw ValidationError("tree and index disagree on pruned nodes");
  return from_tree;
}

/// Replays a piecewise-constant control from `x0`: each segment is propagated
/// from the end state of the previous one and sample times are offset by the
/// accumulated duration. The cost is accumulated one segment at a time.
template <DynamicalSystem S>
Trajectory replay_schedule(const S& sys, const State& x0, const std::vector<ControlSegment>& schedule,
                           const IntegratorConfig& cfg) {
  Trajectory traj;
  traj.samples.push_back({0.0, x0});
  State x = x0;
  double c = 0.0;
  double t0 = 0.0;
  for (const ControlSegment& seg : schedule) {
    const JointPassResult r =
        integrate_joint(sys, x, c, seg.u, seg.duration, cfg, [&](double time, const State& xs, double) {
          traj.samples.push_back({t0 + time, xs});
          return true;
        });
    traj.segments.push_back(seg);
    x = r.x;
    c = r.c;
    t0 += seg.duration;
  }
  traj.cost = c;
  return traj;
}

/// Trajectory from the root to `id`, rebuilt by re-propagating each edge.
template <DynamicalSystem S>
Trajectory trace_path(const PlanTree& tree, NodeId id, const S& sys, const IntegratorConfig& cfg) {
  Trajectory traj = replay_schedule(sys, tree[tree.root()].y.x, tree.control_schedule(id), cfg);
  traj.cost = tree[id].y.c;
  return traj;
}

struct TreeCheck {
  std::size_t nodes_checked = 0;
  std::size_t state_mismatches = 0;
  std::size_t cost_mismatches = 0;
  std::size_t bookkeeping_mismatches = 0;
  std::size_t structure_errors = 0;
  std::string first_error;

  bool ok() const { return state_mismatches + cost_mismatches + bookkeeping_mismatches + structure_errors == 0; }
};

/// Full-tree recomputation: every live non-root node must have a live parent,
/// satisfy c == parent.c + edge_cost exactly, and be reproduced bit for bit
/// (state and cost) by re-propagating its edge from the parent.
template <DynamicalSystem S>
TreeCheck verify_tree(const PlanTree& tree, const S& sys, const IntegratorConfig& cfg) {
  TreeCheck chk;
  auto note = [&](std::size_t& counter, NodeId id, const char* what) {
    ++counter;
    if (chk.first_error.empty()) chk.first_error = std::string(what) + " at node " + std::to_string(id);
  };
  const TreeNode& root = tree[tree.root()];
  if (!root.live || root.parent != kNoNode || root.y.c != 0.0) note(chk.structure_errors, 0, "bad root");
  for (std::size_t i = 1; i < tree.capacity(); ++i) {
    const TreeNode& n = tree[static_cast<NodeId>(i)];
    if (!n.live) continue;
    const auto id = static_cast<NodeId>(i);
    ++chk.nodes_checked;
    if (n.parent >= i || !tree.live(n.parent)) {
      note(chk.structure_errors, id, "dead or invalid parent");
      continue;
    }
    const TreeNode& p = tree[n.parent];
    if (!bit_equal(p.y.c + n.edge_cost, n.y.c)) note(chk.bookkeeping_mismatches, id, "c != parent.c + edge cost");
    const JointPassResult r =
        integrate_joint(sys, p.y.x, p.y.c, n.edge.u, n.edge.duration, cfg, [](double, const State&, double) {
          return true;
        });
    if (!bit_equal(r.x, n.y.x)) note(chk.state_mismatches, id, "replayed state differs");
    if (!bit_equal(r.c, n.y.c) || !bit_equal(r.increment, n.edge_cost)) {
      note(chk.cost_mismatches, id, "replayed cost differs");
    }
  }
  return chk;
}

}  // namespace aorrt
