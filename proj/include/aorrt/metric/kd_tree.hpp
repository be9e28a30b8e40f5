#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "aorrt/core/errors.hpp"

namespace aorrt {

using NodeId = std::uint32_t;

/// Dynamic bucket kd-tree with exact nearest-neighbour queries.
///
/// `Metric` provides `dist2(const double*, const double*)` and
/// `axis_weight(axis)`; a subtree is skipped only when its weighted cell
/// distance, shrunk by a relative 1e-9, exceeds the best squared distance
/// found, so no point the full distance would keep is dropped. Ties go to the
/// smallest id, so results match a linear scan exactly.
///
/// Removal marks entries dead; the tree is rebuilt once more than half of
/// the entries are dead or insertion depth degrades.
template <class Metric>
class KdTree {
 public:
  static constexpr std::size_t kLeafSize = 12;
  /// The incremental cell bound carries rounding error; shrinking it keeps
  /// the pruning conservative.
  static constexpr double kBoundSlack = 1.0 - 1e-9;

  explicit KdTree(std::size_t dim, std::vector<double> split_weights = {})
      : dim_(dim), split_weights_(std::move(split_weights)) {
    if (dim_ == 0) throw ParameterError("kd-tree dimension must be positive");
    if (split_weights_.empty()) split_weights_.assign(dim_, 1.0);
    if (split_weights_.size() != dim_) throw ParameterError("kd-tree split weights must match dimension");
    nodes_.push_back(Node{});
  }

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return live_count_; }
  bool empty() const { return live_count_ == 0; }
  bool contains(NodeId id) const { return slot_of_.count(id) != 0; }

  std::span<const double> point(NodeId id) const {
    const auto it = slot_of_.find(id);
    if (it == slot_of_.end()) throw ParameterError("kd-tree: unknown id");
    return {&coords_[static_cast<std::size_t>(it->second) * dim_], dim_};
  }

  void insert(NodeId id, std::span<const double> p) {
    if (p.size() != dim_) throw ParameterError("kd-tree: point dimension mismatch");
    if (!slot_of_.emplace(id, static_cast<std::uint32_t>(ids_.size())).second) {
      throw ParameterError("kd-tree: duplicate id " + std::to_string(id));
    }
    const auto slot = static_cast<std::uint32_t>(ids_.size());
    coords_.insert(coords_.end(), p.begin(), p.end());
    ids_.push_back(id);
    live_.push_back(1);
    ++live_count_;

    std::size_t ni = 0;
    std::size_t depth = 0;
    while (nodes_[ni].axis >= 0) {
      const Node& n = nodes_[ni];
      ni = p[static_cast<std::size_t>(n.axis)] < n.split ? n.left : n.right;
      ++depth;
    }
    nodes_[ni].bucket.push_back(slot);
    if (nodes_[ni].bucket.size() > kLeafSize) split_leaf(ni);

    ++inserts_since_rebuild_;
    const double limit = 2.0 * std::log2(static_cast<double>(live_count_) + 1.0) + 16.0;
    if (static_cast<double>(depth) > limit && 16 * inserts_since_rebuild_ >= live_count_) rebuild();
  }

  bool erase(NodeId id) {
    const auto it = slot_of_.find(id);
    if (it == slot_of_.end()) return false;
    live_[it->second] = 0;
    slot_of_.erase(it);
    --live_count_;
    maybe_rebuild_after_removal();
    return true;
  }

  /// Removes every live entry with pred(id, point) true; returns the count.
  template <class Pred>
  std::size_t erase_if(Pred pred) {
    std::size_t removed = 0;
    for (std::size_t s = 0; s < ids_.size(); ++s) {
      if (!live_[s]) continue;
      if (pred(ids_[s], std::span<const double>(&coords_[s * dim_], dim_))) {
        live_[s] = 0;
        slot_of_.erase(ids_[s]);
        --live_count_;
        ++removed;
      }
    }
    if (removed) maybe_rebuild_after_removal();
    return removed;
  }

  /// Live entry minimising metric.dist2(q, p); ties broken by smallest id.
  std::pair<NodeId, double> nearest(std::span<const double> q, const Metric& metric) const {
    if (live_count_ == 0) throw ParameterError("nearest query on an empty index");
    Best best;
    std::vector<double> off(dim_, 0.0);
    search(0, q.data(), metric, best, off.data(), 0.0);
    return {best.id, best.d2};
  }

  /// Calls visit(id, d2) for every live entry with dist2 <= radius2.
  template <class Visit>
  void within(std::span<const double> q, double radius2, const Metric& metric, Visit&& visit) const {
    if (live_count_ != 0) range(0, q.data(), radius2, metric, visit);
  }

  std::vector<NodeId> live_ids() const {
    std::vector<NodeId> out;
    out.reserve(live_count_);
    for (std::size_t s = 0; s < ids_.size(); ++s) {
      if (live_[s]) out.push_back(ids_[s]);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Drops dead entries and rebuilds a median-split tree over the live ones.
  void rebuild() {
    std::vector<double> coords;
    std::vector<NodeId> ids;
    coords.reserve(live_count_ * dim_);
    ids.reserve(live_count_);
    for (std::size_t s = 0; s < ids_.size(); ++s) {
      if (!live_[s]) continue;
      coords.insert(coords.end(), coords_.begin() + static_cast<std::ptrdiff_t>(s * dim_),
                    coords_.begin() + static_cast<std::ptrdiff_t>((s + 1) * dim_));
      ids.push_back(ids_[s]);
    }
    coords_ = std::move(coords);
    ids_ = std::move(ids);
    live_.assign(ids_.size(), 1);
    slot_of_.clear();
    for (std::size_t s = 0; s < ids_.size(); ++s) slot_of_.emplace(ids_[s], static_cast<std::uint32_t>(s));

    nodes_.clear();
    nodes_.push_back(Node{});
    inserts_since_rebuild_ = 0;
    std::vector<std::uint32_t> slots(ids_.size());
    for (std::size_t s = 0; s < slots.size(); ++s) slots[s] = static_cast<std::uint32_t>(s);
    build(0, slots.begin(), slots.end());
  }

 private:
  struct Node {
    int axis = -1;  // -1 marks a leaf
    double split = 0.0;
    std::size_t left = 0;
    std::size_t right = 0;
    std::vector<std::uint32_t> bucket;
  };

  struct Best {
    double d2 = std::numeric_limits<double>::infinity();
    NodeId id = std::numeric_limits<NodeId>::max();
  };

  double coord(std::uint32_t slot, std::size_t axis) const { return coords_[slot * dim_ + axis]; }

  using SlotIt = std::vector<std::uint32_t>::iterator;

  /// Axis of largest weighted spread and a split value leaving both sides non-empty.
  std::optional<std::pair<std::size_t, double>> choose_split(SlotIt first, SlotIt last) const {
    std::size_t best_axis = 0;
    double best_spread = 0.0;
    for (std::size_t a = 0; a < dim_; ++a) {
      if (split_weights_[a] <= 0.0) continue;
      double lo = std::numeric_limits<double>::infinity();
      double hi = -lo;
      for (auto it = first; it != last; ++it) {
        lo = std::min(lo, coord(*it, a));
        hi = std::max(hi, coord(*it, a));
      }
      const double spread = split_weights_[a] * (hi - lo) * (hi - lo);
      if (spread > best_spread) {
        best_spread = spread;
        best_axis = a;
      }
    }
    if (!(best_spread > 0.0)) return std::nullopt;
    std::vector<double> vals;
    vals.reserve(static_cast<std::size_t>(last - first));
    for (auto it = first; it != last; ++it) vals.push_back(coord(*it, best_axis));
    std::sort(vals.begin(), vals.end());
    double split = vals[vals.size() / 2];
    if (!(split > vals.front())) split = *std::upper_bound(vals.begin(), vals.end(), vals.front());
    return std::make_pair(best_axis, split);
  }

  void split_leaf(std::size_t ni) {
    std::vector<std::uint32_t> bucket;
    for (std::uint32_t s : nodes_[ni].bucket) {
      if (live_[s]) bucket.push_back(s);
    }
    nodes_[ni].bucket = bucket;
    if (bucket.size() <= kLeafSize) return;
    const auto choice = choose_split(bucket.begin(), bucket.end());
    if (!choice) return;
    const auto [axis, split] = *choice;
    Node left;
    Node right;
    for (std::uint32_t s : bucket) (coord(s, axis) < split ? left : right).bucket.push_back(s);
    nodes_[ni].bucket.clear();
    nodes_[ni].bucket.shrink_to_fit();
    nodes_[ni].axis = static_cast<int>(axis);
    nodes_[ni].split = split;
    nodes_[ni].left = nodes_.size();
    nodes_.push_back(std::move(left));
    nodes_[ni].right = nodes_.size();
    nodes_.push_back(std::move(right));
  }

  void build(std::size_t ni, SlotIt first, SlotIt last) {
    const auto n = static_cast<std::size_t>(last - first);
    std::optional<std::pair<std::size_t, double>> choice;
    if (n > kLeafSize) choice = choose_split(first, last);
    if (!choice) {
      nodes_[ni].bucket.assign(first, last);
      return;
    }
    const auto [axis, split] = *choice;
    const auto mid = std::partition(first, last, [&](std::uint32_t s) { return coord(s, axis) < split; });
    nodes_[ni].axis = static_cast<int>(axis);
    nodes_[ni].split = split;
    const std::size_t l = nodes_.size();
    nodes_.push_back(Node{});
    const std::size_t r = nodes_.size();
    nodes_.push_back(Node{});
    nodes_[ni].left = l;
    nodes_[ni].right = r;
    build(l, first, mid);
    build(r, mid, last);
  }

  void maybe_rebuild_after_removal() {
    const std::size_t dead = ids_.size() - live_count_;
    if (2 * dead > ids_.size()) rebuild();
  }

  /// `off[a]` is the query's offset from the current cell along axis a and
  /// `rd` the weighted sum of their squares, a lower bound on the distance to
  /// any point of the cell.
  void search(std::size_t ni, const double* q, const Metric& metric, Best& best, double* off, double rd) const {
    const Node& n = nodes_[ni];
    if (n.axis < 0) {
      for (std::uint32_t s : n.bucket) {
        if (!live_[s]) continue;
        const double d2 = metric.dist2(q, &coords_[s * dim_]);
        if (d2 < best.d2 || (d2 == best.d2 && ids_[s] < best.id)) {
          best.d2 = d2;
          best.id = ids_[s];
        }
      }
      return;
    }
    const auto axis = static_cast<std::size_t>(n.axis);
    const double diff = q[axis] - n.split;
    const std::size_t near = diff < 0.0 ? n.left : n.right;
    const std::size_t far = diff < 0.0 ? n.right : n.left;
    search(near, q, metric, best, off, rd);
    const double w = metric.axis_weight(axis);
    const double old = off[axis];
    const double far_rd = rd + w * (diff * diff - old * old);
    if (far_rd * kBoundSlack <= best.d2) {
      off[axis] = diff;
      search(far, q, metric, best, off, far_rd);
      off[axis] = old;
    }
  }

  template <class Visit>
  void range(std::size_t ni, const double* q, double radius2, const Metric& metric, Visit& visit) const {
    const Node& n = nodes_[ni];
    if (n.axis < 0) {
      for (std::uint32_t s : n.bucket) {
        if (!live_[s]) continue;
        const double d2 = metric.dist2(q, &coords_[s * dim_]);
        if (d2 <= radius2) visit(ids_[s], d2);
      }
      return;
    }
    const auto axis = static_cast<std::size_t>(n.axis);
    const double diff = q[axis] - n.split;
    const std::size_t near = diff < 0.0 ? n.left : n.right;
    const std::size_t far = diff < 0.0 ? n.right : n.left;
    range(near, q, radius2, metric, visit);
    if (metric.axis_weight(axis) * (diff * diff) <= radius2) range(far, q, radius2, metric, visit);
  }

  std::size_t dim_;
  std::vector<double> split_weights_;
  std::vector<double> coords_;
  std::vector<NodeId> ids_;
  std::vector<char> live_;
  std::unordered_map<NodeId, std::uint32_t> slot_of_;
  std::vector<Node> nodes_;
  std::size_t live_count_ = 0;
  std::size_t inserts_since_rebuild_ = 0;
};

}  // namespace aorrt
