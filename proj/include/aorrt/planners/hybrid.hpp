#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "aorrt/planners/ao_rrt.hpp"

namespace aorrt {

/// Exploration step interleaved with AO-RRT iterations by the hybrid planner.
/// Implementations may only draw from the expansion stream, so the AO-RRT
/// iterations see the same random sequence whichever strategy is plugged in.
template <DynamicalSystem S>
class ExpansionStrategy {
 public:
  virtual ~ExpansionStrategy() = default;
  virtual StepResult expand(AoRrtPlanner<S>& planner, std::uint64_t iteration) = 0;
};

template <DynamicalSystem S>
class NoopExpansion final : public ExpansionStrategy<S> {
 public:
  StepResult expand(AoRrtPlanner<S>&, std::uint64_t) override { return {StepOutcome::zero_duration}; }
};

/// Density-guided exploration: a uniform grid over up to two state axes plus
/// the cost axis counts the tree nodes per cell; each step extends a random
/// node of the least occupied non-empty cell with a random control.
template <DynamicalSystem S>
class DensityGridExpansion final : public ExpansionStrategy<S> {
 public:
  DensityGridExpansion(const S& sys, double cost_range, std::size_t cells_per_axis = 16)
      : cells_(cells_per_axis), cost_range_(cost_range) {
    const std::size_t axes = std::min<std::size_t>(2, sys.state_dim());
    for (std::size_t a = 0; a < axes; ++a) {
      axes_.push_back(a);
      lo_.push_back(sys.state_bounds().lo[a]);
      span_.push_back(sys.state_bounds().hi[a] - sys.state_bounds().lo[a]);
    }
  }

  StepResult expand(AoRrtPlanner<S>& pl, std::uint64_t iteration) override {
    sync(pl.tree());
    if (by_count_.empty()) return {StepOutcome::zero_duration};
    const std::uint64_t key = by_count_.begin()->second;
    const std::vector<NodeId>& members = cells_of_.at(key);
    RandomStream& rng = pl.streams().expansion;
    const NodeId from = members[rng.uniform_index(members.size())];
    const double t = rng.uniform(0.0, pl.params().t_prop);
    const Control u = rng.uniform_in(pl.control_bounds());
    return pl.extend(from, u, t, iteration, NodeOrigin::expansion);
  }

 private:
  std::uint64_t cell_of(const AugmentedState& y) const {
    std::uint64_t key = 0;
    for (std::size_t i = 0; i < axes_.size(); ++i) key = key * cells_ + bin((y.x[axes_[i]] - lo_[i]) / span_[i]);
    return key * cells_ + bin(y.c / cost_range_);
  }

  std::uint64_t bin(double s) const {
    const double v = std::floor(s * static_cast<double>(cells_));
    if (!(v > 0.0)) return 0;
    return std::min<std::uint64_t>(cells_ - 1, static_cast<std::uint64_t>(v));
  }

  /// Brings the grid up to date with nodes added (and removed) since the last call.
  void sync(const PlanTree& tree) {
    if (tree.removed_count() != seen_removed_) {
      cells_of_.clear();
      by_count_.clear();
      seen_ = 0;
      seen_removed_ = tree.removed_count();
    }
    for (; seen_ < tree.capacity(); ++seen_) {
      const auto id = static_cast<NodeId>(seen_);
      if (!tree.live(id)) continue;
      const std::uint64_t key = cell_of(tree[id].y);
      auto& members = cells_of_[key];
      if (!members.empty()) by_count_.erase({members.size(), key});
      members.push_back(id);
      by_count_.insert({members.size(), key});
    }
  }

  std::uint64_t cells_;
  double cost_range_;
  std::vector<std::size_t> axes_;
  std::vector<double> lo_;
  std::vector<double> span_;
  std::map<std::uint64_t, std::vector<NodeId>> cells_of_;
  std::set<std::pair<std::size_t, std::uint64_t>> by_count_;
  std::size_t seen_ = 0;
  std::size_t seen_removed_ = 0;
};

/// Alternates AO-RRT iterations (even) with exploration steps (odd) on one tree.
template <DynamicalSystem S>
PlanResult run_hybrid(const Problem<S>& prob, const PlannerParams& params, PlannerStreams streams,
                      ExpansionStrategy<S>& pln, const RunOptions& opts = {},
                      std::vector<NodeOrigin>* provenance = nullptr) {
  params.validate();
  AoRrtPlanner<S> pl(prob, params, std::move(streams));
  RunMonitor mon(params);
  pl.set_clock(&mon);
  std::uint64_t it = 0;
  while (mon.keep_going(it, [&] { return pl.snapshot(); })) {
    const bool ao = it % 2 == 0;
    if (ao) {
      pl.step(it);
    } else {
      pln.expand(pl, it);
    }
    if (provenance) provenance->push_back(ao ? NodeOrigin::ao : NodeOrigin::expansion);
    ++it;
  }
  return finish_single(pl, prob, mon, it, opts);
}

template <DynamicalSystem S>
PlanResult run_hybrid(const Problem<S>& prob, const PlannerParams& params, PlannerStreams streams,
                      const RunOptions& opts = {}) {
  DensityGridExpansion<S> pln(prob.system, params.c_max);
  return run_hybrid(prob, params, std::move(streams), pln, opts);
}

}  // namespace aorrt
