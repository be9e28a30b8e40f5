#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <utility>
#include <vector>

#include "aorrt/geometry/collision.hpp"
#include "aorrt/scenarios/scenario.hpp"

namespace aorrt {

using Point2 = std::array<double, 2>;

namespace detail {

inline bool strictly_inside(const Point2& p, const BoxShape& b, double eps) {
  return p[0] > b.min[0] + eps && p[0] < b.max[0] - eps && p[1] > b.min[1] + eps && p[1] < b.max[1] - eps;
}

/// True when segment ab passes through the interior of box b. The segment is
/// clipped to the closed box; it is blocked when the clipped piece has
/// positive length and its midpoint is strictly inside.
inline bool crosses_interior(const Point2& a, const Point2& b, const BoxShape& box) {
  constexpr double eps = 1e-12;
  double t0 = 0.0;
  double t1 = 1.0;
  for (std::size_t i = 0; i < 2; ++i) {
    const double d = b[i] - a[i];
    if (std::abs(d) < 1e-300) {
      if (a[i] < box.min[i] || a[i] > box.max[i]) return false;
      continue;
    }
    double lo = (box.min[i] - a[i]) / d;
    double hi = (box.max[i] - a[i]) / d;
    if (lo > hi) std::swap(lo, hi);
    t0 = std::max(t0, lo);
    t1 = std::min(t1, hi);
    if (t0 > t1) return false;
  }
  if (t1 - t0 <= eps) return false;
  const double tm = 0.5 * (t0 + t1);
  const Point2 m{a[0] + (b[0] - a[0]) * tm, a[1] + (b[1] - a[1]) * tm};
  return strictly_inside(m, box, eps);
}

}  // namespace detail

struct VisibilityPath {
  double length = std::numeric_limits<double>::infinity();
  /// Vertex ids: 0 = start, 1 = goal, 2 + 4k + j = corner j of box k
  /// (counter-clockwise from the min corner).
  std::vector<std::size_t> vertices;
};

/// Shortest collision-free path from `start` to `goal` among boxes, via
/// Dijkstra on the visibility graph of start, goal and box corners.
inline VisibilityPath shortest_path(const Point2& start, const Point2& goal, const std::vector<BoxShape>& boxes) {
  for (const auto& b : boxes) {
    if (b.min.size() != 2 || b.max.size() != 2) throw InvalidScenarioError("visibility oracle needs 2D boxes");
    if (detail::strictly_inside(start, b, 0.0)) throw InvalidScenarioError("oracle start lies in an obstacle");
    if (detail::strictly_inside(goal, b, 0.0)) throw InvalidScenarioError("oracle goal lies in an obstacle");
  }
  std::vector<Point2> pts{start, goal};
  std::vector<char> usable{1, 1};
  for (const auto& b : boxes) {
    for (const Point2& c : {Point2{b.min[0], b.min[1]}, Point2{b.max[0], b.min[1]}, Point2{b.max[0], b.max[1]},
                            Point2{b.min[0], b.max[1]}}) {
      bool buried = false;
      for (const auto& o : boxes) buried = buried || detail::strictly_inside(c, o, 0.0);
      pts.push_back(c);
      usable.push_back(!buried);
    }
  }
  const std::size_t n = pts.size();
  auto visible = [&](std::size_t i, std::size_t j) {
    for (const auto& b : boxes) {
      if (detail::crosses_interior(pts[i], pts[j], b)) return false;
    }
    return true;
  };
  std::vector<double> dist(n, std::numeric_limits<double>::infinity());
  std::vector<std::size_t> prev(n, n);
  std::vector<char> done(n, 0);
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[0] = 0.0;
  pq.push({0.0, 0});
  while (!pq.empty()) {
    const auto [d, i] = pq.top();
    pq.pop();
    if (done[i]) continue;
    done[i] = 1;
    if (i == 1) break;
    for (std::size_t j = 0; j < n; ++j) {
      if (done[j] || !usable[j] || !visible(i, j)) continue;
      const double nd = d + std::hypot(pts[j][0] - pts[i][0], pts[j][1] - pts[i][1]);
      if (nd < dist[j]) {
        dist[j] = nd;
        prev[j] = i;
        pq.push({nd, j});
      }
    }
  }
  VisibilityPath out;
  if (!done[1]) return out;
  out.length = dist[1];
  for (std::size_t v = 1; v != n; v = prev[v]) out.vertices.push_back(v);
  std::reverse(out.vertices.begin(), out.vertices.end());
  return out;
}

inline double shortest_path_length(const Point2& start, const Point2& goal, const std::vector<BoxShape>& boxes) {
  return shortest_path(start, goal, boxes).length;
}

/// Minimum time for a point with speed at most u_max to go from start to goal.
inline double oracle_point_robot(const Point2& start, const Point2& goal, const std::vector<BoxShape>& boxes,
                                 double u_max) {
  if (!(u_max > 0.0)) throw ParameterError("oracle_point_robot needs u_max > 0");
  return shortest_path_length(start, goal, boxes) / u_max;
}

/// Rest-to-rest minimum time over distance d with |acceleration| <= a.
inline double oracle_double_integrator(double d, double a) {
  if (!(d >= 0.0)) throw ParameterError("oracle_double_integrator needs d >= 0");
  if (!(a > 0.0)) throw ParameterError("oracle_double_integrator needs a > 0");
  return 2.0 * std::sqrt(d / a);
}

/// Minimum time to reach (p, v) from rest at the origin with |acceleration| <= a,
/// the better of the two single-switch bang-bang arcs that are feasible.
inline double min_time_from_rest(double p, double v, double a) {
  double best = std::numeric_limits<double>::infinity();
  // +a then -a: peak velocity w, requires w >= v.
  if (const double s = a * p + 0.5 * v * v; s >= 0.0) {
    const double w = std::sqrt(s);
    if (w >= v) best = std::min(best, (2.0 * w - v) / a);
  }
  // -a then +a: trough velocity -w, requires v >= -w.
  if (const double s = -a * p + 0.5 * v * v; s >= 0.0) {
    const double w = std::sqrt(s);
    if (v >= -w) best = std::min(best, (2.0 * w + v) / a);
  }
  return best;
}

/// Minimum of min_time_from_rest over the disk of radius r around (p_c, v_c).
/// The time function has no interior critical points, so the minimum is on
/// the boundary circle (or 0 if the disk covers the origin); a dense sweep is
/// followed by golden-section refinement.
inline double min_time_to_disk(double p_c, double v_c, double r, double a) {
  if (p_c * p_c + v_c * v_c <= r * r) return 0.0;
  const auto f = [&](double th) { return min_time_from_rest(p_c + r * std::cos(th), v_c + r * std::sin(th), a); };
  constexpr int kSweep = 20000;
  const double step = 2.0 * M_PI / kSweep;
  int best_k = 0;
  double best = f(0.0);
  for (int k = 1; k < kSweep; ++k) {
    const double v = f(k * step);
    if (v < best) {
      best = v;
      best_k = k;
    }
  }
  double lo = (best_k - 1) * step;
  double hi = (best_k + 1) * step;
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int i = 0; i < 100; ++i) {
    const double m1 = hi - g * (hi - lo);
    const double m2 = lo + g * (hi - lo);
    if (f(m1) < f(m2)) {
      hi = m2;
    } else {
      lo = m1;
    }
  }
  return std::min(best, f(0.5 * (lo + hi)));
}

namespace detail {

inline std::vector<BoxShape> oracle_boxes(const Scenario& sc) {
  std::vector<BoxShape> boxes;
  for (const auto& o : sc.obstacles.obstacles()) {
    const auto* b = std::get_if<BoxShape>(&o.shape);
    if (!b) throw InvalidScenarioError("oracle: point_robot needs box obstacles");
    if (o.projection != std::vector<std::size_t>{0, 1}) {
      throw InvalidScenarioError("oracle: point_robot boxes must project on (x, y)");
    }
    boxes.push_back(*b);
  }
  return boxes;
}

inline double accel_bound(const Scenario& sc) {
  const ControlBox& ub = sc.control_bounds();
  return std::max(std::abs(ub.lo[0]), std::abs(ub.hi[0]));
}

inline void require_rest_start(const Scenario& sc) {
  if (sc.x_init[1] != 0.0) throw InvalidScenarioError("oracle: double_integrator needs a start at rest");
}

}  // namespace detail

/// Optimal cost to reach the goal *center* (the reference value of the scenario).
inline double scenario_oracle(const Scenario& sc) {
  switch (sc.oracle) {
    case OracleKind::point_robot: {
      const auto& sys = std::get<SingleIntegrator2d>(sc.system);
      if (sc.goal.projection != std::vector<std::size_t>{0, 1}) throw InvalidScenarioError("oracle: goal must project on (x, y)");
      return oracle_point_robot({sc.x_init[0], sc.x_init[1]}, {sc.goal.center[0], sc.goal.center[1]},
                                detail::oracle_boxes(sc), sys.max_speed());
    }
    case OracleKind::double_integrator: {
      detail::require_rest_start(sc);
      const double d = std::abs(sc.goal.center[0] - sc.x_init[0]);
      return oracle_double_integrator(d, detail::accel_bound(sc));
    }
    case OracleKind::none: break;
  }
  throw InvalidScenarioError("scenario '" + sc.name + "' has no oracle");
}

/// Optimal cost to reach any point of the goal ball: a true lower bound on
/// every valid solution cost the planners can report.
inline double scenario_lower_bound(const Scenario& sc) {
  switch (sc.oracle) {
    case OracleKind::point_robot: {
      const auto& sys = std::get<SingleIntegrator2d>(sc.system);
      const double len = shortest_path_length({sc.x_init[0], sc.x_init[1]}, {sc.goal.center[0], sc.goal.center[1]},
                                              detail::oracle_boxes(sc));
      return std::max(0.0, len - sc.goal.radius) / sys.max_speed();
    }
    case OracleKind::double_integrator: {
      detail::require_rest_start(sc);
      const double a = detail::accel_bound(sc);
      const double p_c = sc.goal.projection[0] == 0 ? sc.goal.center[0] : sc.goal.center[1];
      if (sc.goal.projection.size() == 1) {
        if (sc.goal.projection[0] == 0) {
          return std::sqrt(2.0 * std::max(0.0, std::abs(p_c - sc.x_init[0]) - sc.goal.radius) / a);
        }
        return std::max(0.0, std::abs(sc.goal.center[0]) - sc.goal.radius) / a;
      }
      double v_c = sc.goal.center[1];
      double p = sc.goal.center[0];
      if (sc.goal.projection[0] == 1) std::swap(p, v_c);
      return min_time_to_disk(p - sc.x_init[0], v_c, sc.goal.radius, a);
    }
    case OracleKind::none: break;
  }
  throw InvalidScenarioError("scenario '" + sc.name + "' has no oracle");
}

/// True when inflating every box by `delta` keeps the optimal path in the
/// same homotopy class (it wraps the same corners in the same order), so the
/// reference path has a clearance tube around it.
inline bool point_oracle_is_robust(const Scenario& sc, double delta) {
  const auto boxes = detail::oracle_boxes(sc);
  std::vector<BoxShape> inflated = boxes;
  for (auto& b : inflated) {
    for (std::size_t i = 0; i < 2; ++i) {
      b.min[i] -= delta;
      b.max[i] += delta;
    }
  }
  const Point2 s{sc.x_init[0], sc.x_init[1]};
  const Point2 g{sc.goal.center[0], sc.goal.center[1]};
  const VisibilityPath base = shortest_path(s, g, boxes);
  const VisibilityPath infl = shortest_path(s, g, inflated);
  return std::isfinite(base.length) && std::isfinite(infl.length) && base.vertices == infl.vertices;
}

}  // namespace aorrt
