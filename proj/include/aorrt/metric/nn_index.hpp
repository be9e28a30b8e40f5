#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "aorrt/core/types.hpp"
#include "aorrt/metric/kd_tree.hpp"
#include "aorrt/metric/metric.hpp"

namespace aorrt {

/// Nearest-neighbour index over tree vertices in the state-cost space.
///
/// Points are stored unscaled; the metric weights are applied per axis at
/// query time, which is the same ordering as the weighted metric on a
/// rescaled space but evaluated with exactly the operations of squared_dist.
class NnIndex {
 public:
  /// `split_weights` only steers the choice of split axes (a zero cost
  /// weight keeps the cost axis out of the tree structure).
  explicit NnIndex(std::size_t state_dim, MetricWeights split_weights = {})
      : state_dim_(state_dim), tree_(state_dim + 1, axis_weights(state_dim, split_weights)) {}

  std::size_t state_dim() const { return state_dim_; }
  std::size_t size() const { return tree_.size(); }
  bool empty() const { return tree_.empty(); }
  bool contains(NodeId id) const { return tree_.contains(id); }

  void insert(NodeId id, const AugmentedState& y) {
    check_dim(y);
    const auto p = flatten(y);
    tree_.insert(id, std::span<const double>(p.data(), state_dim_ + 1));
  }

  NodeId nearest(const AugmentedState& query, const MetricWeights& w) const {
    check_dim(query);
    const auto p = flatten(query);
    return tree_.nearest(std::span<const double>(p.data(), state_dim_ + 1), AugmentedMetric{state_dim_, w}).first;
  }

  /// Visits (id, squared distance) of live entries within `radius`.
  template <class Visit>
  void within(const AugmentedState& query, double radius, const MetricWeights& w, Visit&& visit) const {
    check_dim(query);
    const auto p = flatten(query);
    tree_.within(std::span<const double>(p.data(), state_dim_ + 1), radius * radius, AugmentedMetric{state_dim_, w},
                 visit);
  }

  /// Removes every live entry whose cost exceeds `c_threshold`.
  std::size_t remove_above_cost(double c_threshold) {
    const std::size_t d = state_dim_;
    return tree_.erase_if([&](NodeId, std::span<const double> p) { return p[d] > c_threshold; });
  }

  bool erase(NodeId id) { return tree_.erase(id); }

  std::vector<NodeId> live_ids() const { return tree_.live_ids(); }

 private:
  static std::vector<double> axis_weights(std::size_t d, const MetricWeights& w) {
    std::vector<double> out(d + 1, w.w_x);
    out[d] = w.w_c;
    if (w.w_x <= 0.0 && w.w_c <= 0.0) out.assign(d + 1, 1.0);
    return out;
  }

  void check_dim(const AugmentedState& y) const {
    if (y.x.size() != state_dim_) throw ParameterError("nn index: state dimension mismatch");
  }

  std::array<double, kMaxStateDim + 1> flatten(const AugmentedState& y) const {
    std::array<double, kMaxStateDim + 1> p{};
    for (std::size_t i = 0; i < state_dim_; ++i) p[i] = y.x[i];
    p[state_dim_] = y.c;
    return p;
  }

  std::size_t state_dim_;
  KdTree<AugmentedMetric> tree_;
};

}  // namespace aorrt
