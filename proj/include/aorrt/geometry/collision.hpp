#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <variant>
#include <vector>

#include "aorrt/core/types.hpp"

namespace aorrt {

struct BoxShape {
  std::vector<double> min;
  std::vector<double> max;
};

struct BallShape {
  std::vector<double> center;
  double radius = 0.0;
};

/// Obstacle in the workspace subspace selected by `projection` (positional
/// state coordinates). Obstacles are closed sets, so the free space is open.
struct Obstacle {
  std::variant<BoxShape, BallShape> shape;
  std::vector<std::size_t> projection;

  static Obstacle box(std::vector<double> min, std::vector<double> max, std::vector<std::size_t> projection) {
    return Obstacle{BoxShape{std::move(min), std::move(max)}, std::move(projection)};
  }
  static Obstacle ball(std::vector<double> center, double radius, std::vector<std::size_t> projection) {
    return Obstacle{BallShape{std::move(center), radius}, std::move(projection)};
  }

  void validate(std::size_t state_dim) const {
    if (projection.empty()) throw InvalidScenarioError("obstacle projection must not be empty");
    for (std::size_t idx : projection) {
      if (idx >= state_dim) throw InvalidScenarioError("obstacle projection index out of range");
    }
    if (const auto* b = std::get_if<BoxShape>(&shape)) {
      if (b->min.size() != projection.size() || b->max.size() != projection.size()) {
        throw InvalidScenarioError("obstacle box corners must match the projection dimension");
      }
      for (std::size_t i = 0; i < b->min.size(); ++i) {
        if (!(b->min[i] < b->max[i])) throw InvalidScenarioError("obstacle box needs min < max on every axis");
      }
    } else {
      const auto& s = std::get<BallShape>(shape);
      if (s.center.size() != projection.size()) {
        throw InvalidScenarioError("obstacle ball center must match the projection dimension");
      }
      if (!(s.radius > 0.0)) throw InvalidScenarioError("obstacle ball radius must be positive");
    }
  }

  /// True when x lies in the closed obstacle.
  bool contains(const State& x) const {
    if (const auto* b = std::get_if<BoxShape>(&shape)) {
      for (std::size_t i = 0; i < projection.size(); ++i) {
        const double v = x[projection[i]];
        if (v < b->min[i] || v > b->max[i]) return false;
      }
      return true;
    }
    const auto& s = std::get<BallShape>(shape);
    double sum = 0.0;
    for (std::size_t i = 0; i < projection.size(); ++i) {
      const double d = x[projection[i]] - s.center[i];
      sum += d * d;
    }
    return sum <= s.radius * s.radius;
  }

  /// Euclidean distance from the projected point to the obstacle (0 inside).
  double distance(const State& x) const {
    double sum = 0.0;
    if (const auto* b = std::get_if<BoxShape>(&shape)) {
      for (std::size_t i = 0; i < projection.size(); ++i) {
        const double v = x[projection[i]];
        const double d = v < b->min[i] ? b->min[i] - v : (v > b->max[i] ? v - b->max[i] : 0.0);
        sum += d * d;
      }
      return std::sqrt(sum);
    }
    const auto& s = std::get<BallShape>(shape);
    for (std::size_t i = 0; i < projection.size(); ++i) {
      const double d = x[projection[i]] - s.center[i];
      sum += d * d;
    }
    return std::max(0.0, std::sqrt(sum) - s.radius);
  }
};

class ObstacleSet {
 public:
  ObstacleSet() = default;
  ObstacleSet(std::vector<Obstacle> obstacles, StateBox state_bounds)
      : obstacles_(std::move(obstacles)), bounds_(std::move(state_bounds)) {}

  const std::vector<Obstacle>& obstacles() const { return obstacles_; }
  const StateBox& state_bounds() const { return bounds_; }

  void validate() const {
    if (!bounds_.valid()) throw InvalidScenarioError("state bounds are invalid");
    for (const auto& o : obstacles_) o.validate(bounds_.dim());
  }

  ObstacleSet without(std::size_t index) const {
    ObstacleSet out = *this;
    out.obstacles_.erase(out.obstacles_.begin() + static_cast<std::ptrdiff_t>(index));
    return out;
  }

  /// Strictly inside the state bounds and strictly outside every obstacle.
  bool is_free(const State& x) const {
    if (!bounds_.contains_open(x)) return false;
    for (const auto& o : obstacles_) {
      if (o.contains(x)) return false;
    }
    return true;
  }

  /// Distance to the nearest obstacle surface or state-bound face.
  double clearance_at(const State& x) const {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < bounds_.dim(); ++i) {
      best = std::min(best, std::min(x[i] - bounds_.lo[i], bounds_.hi[i] - x[i]));
    }
    for (const auto& o : obstacles_) best = std::min(best, o.distance(x));
    return std::max(0.0, best);
  }

 private:
  std::vector<Obstacle> obstacles_;
  StateBox bounds_;
};

inline bool is_free(const State& x, const ObstacleSet& obs) { return obs.is_free(x); }

/// Checks consecutive samples of a path, filling gaps longer than
/// `resolution` seconds with linearly interpolated points.
///
/// `validity(state)` decides membership of a single path point.
template <class Validity>
class SegmentChecker {
 public:
  SegmentChecker(const Validity& validity, double resolution) : validity_(&validity), resolution_(resolution) {
    if (!(resolution_ > 0.0)) throw ParameterError("collision resolution must be positive");
  }

  bool point(const State& x) const { return (*validity_)(x); }

  /// Checks the interior interpolation points and the end point of the
  /// segment (t0, a) -> (t1, b); the start point is assumed already checked.
  bool segment(double t0, const State& a, double t1, const State& b) const {
    const double dt = t1 - t0;
    if (dt > resolution_) {
      const auto n = static_cast<std::size_t>(std::ceil(dt / resolution_));
      State p(a.size());
      for (std::size_t j = 1; j < n; ++j) {
        const double s = static_cast<double>(j) / static_cast<double>(n);
        for (std::size_t i = 0; i < a.size(); ++i) p[i] = a[i] + (b[i] - a[i]) * s;
        if (!(*validity_)(p)) return false;
      }
    }
    return (*validity_)(b);
  }

 private:
  const Validity* validity_;
  double resolution_;
};

/// True when every sample of `traj`, and every interpolated point at spacing
/// <= `resolution`, lies in free space.
inline bool collision_free(const Trajectory& traj, const ObstacleSet& obs, double resolution) {
  if (traj.samples.empty()) return true;
  const auto validity = [&obs](const State& x) { return obs.is_free(x); };
  SegmentChecker<decltype(validity)> checker(validity, resolution);
  if (!checker.point(traj.samples.front().state)) return false;
  for (std::size_t i = 0; i + 1 < traj.samples.size(); ++i) {
    const auto& a = traj.samples[i];
    const auto& b = traj.samples[i + 1];
    if (!checker.segment(a.time, a.state, b.time, b.state)) return false;
  }
  return true;
}

/// Tube radius of the trajectory: minimum clearance over densely sampled
/// points (spacing <= `resolution` seconds) combined with the slack of the
/// final state inside the goal ball; 0 means not robust.
inline double clearance(const Trajectory& traj, const ObstacleSet& obs, const GoalRegion& goal,
                        double resolution = 1e-3) {
  if (traj.samples.empty()) throw ParameterError("clearance of an empty trajectory");
  if (!(resolution > 0.0)) throw ParameterError("clearance resolution must be positive");
  double best = obs.clearance_at(traj.samples.front().state);
  for (std::size_t k = 0; k + 1 < traj.samples.size(); ++k) {
    const auto& a = traj.samples[k];
    const auto& b = traj.samples[k + 1];
    const auto n = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil((b.time - a.time) / resolution)));
    State p(a.state.size());
    for (std::size_t j = 1; j <= n; ++j) {
      const double s = static_cast<double>(j) / static_cast<double>(n);
      for (std::size_t i = 0; i < p.size(); ++i) p[i] = a.state[i] + (b.state[i] - a.state[i]) * s;
      best = std::min(best, obs.clearance_at(p));
    }
  }
  best = std::min(best, goal.radius - goal.distance(traj.final_state()));
  return std::max(0.0, best);
}

}  // namespace aorrt
