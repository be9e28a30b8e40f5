#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "aorrt/core/coords.hpp"
#include "aorrt/core/errors.hpp"

namespace aorrt {

/// A point (x, c) of the state-cost space: robot state plus cost-to-come.
struct AugmentedState {
  State x;
  double c = 0.0;
};

/// One constant piece of a piecewise-constant control function.
struct ControlSegment {
  Control u;
  double duration = 0.0;
};

struct TrajectorySample {
  double time = 0.0;
  State state;
};

/// Integrated path: time-ordered samples, the control pieces that produced
/// them, and the accumulated cost along the path.
struct Trajectory {
  std::vector<TrajectorySample> samples;
  std::vector<ControlSegment> segments;
  double cost = 0.0;

  bool empty() const { return samples.empty(); }
  double duration() const { return samples.empty() ? 0.0 : samples.back().time; }
  const State& final_state() const { return samples.back().state; }

  double segment_duration() const {
    double total = 0.0;
    for (const auto& s : segments) total += s.duration;
    return total;
  }
};

/// Goal region: ball of `radius` around `center` in the subspace selected by
/// `projection` (indices into the state).
struct GoalRegion {
  std::vector<double> center;
  double radius = 0.0;
  std::vector<std::size_t> projection;

  void validate(std::size_t state_dim) const {
    if (!(radius > 0.0) || !std::isfinite(radius)) {
      throw InvalidScenarioError("goal.radius must be positive and finite");
    }
    if (projection.empty() || projection.size() != center.size()) {
      throw InvalidScenarioError("goal.projection must be non-empty and match goal.center");
    }
    for (std::size_t i = 0; i < projection.size(); ++i) {
      if (projection[i] >= state_dim) {
        throw InvalidScenarioError("goal.projection index out of range");
      }
      for (std::size_t j = 0; j < i; ++j) {
        if (projection[i] == projection[j]) {
          throw InvalidScenarioError("goal.projection indices must be distinct");
        }
      }
    }
  }

  /// Euclidean distance between the projected coordinates of `x` and the center.
  double distance(const State& x) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < projection.size(); ++i) {
      const double d = x[projection[i]] - center[i];
      sum += d * d;
    }
    return std::sqrt(sum);
  }

  bool contains(const State& x) const { return distance(x) <= radius; }
};

/// Distance from `x` to the goal center in the goal's projected subspace.
inline double project_to_goal_distance(const State& x, const GoalRegion& goal) {
  if (goal.projection.size() != goal.center.size()) {
    throw InvalidScenarioError("goal.projection and goal.center differ in length");
  }
  for (std::size_t idx : goal.projection) {
    if (idx >= x.size()) throw InvalidScenarioError("goal projection index exceeds state dimension");
  }
  return goal.distance(x);
}

}  // namespace aorrt
