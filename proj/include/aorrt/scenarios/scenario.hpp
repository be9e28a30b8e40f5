#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <initializer_list>
#include <variant>
#include <vector>

#include "aorrt/core/types.hpp"
#include "aorrt/dynamics/systems.hpp"
#include "aorrt/geometry/collision.hpp"
#include "aorrt/planners/params.hpp"

namespace aorrt {

using SystemVariant = std::variant<SingleIntegrator2d, DoubleIntegrator1d, DoubleIntegrator2d, KinematicCar>;

enum class OracleKind { none, point_robot, double_integrator };

inline std::string oracle_name(OracleKind k) {
  switch (k) {
    case OracleKind::none: return "none";
    case OracleKind::point_robot: return "point_robot";
    case OracleKind::double_integrator: return "double_integrator";
  }
  return "none";
}

inline OracleKind parse_oracle(const std::string& s) {
  if (s == "none") return OracleKind::none;
  if (s == "point_robot") return OracleKind::point_robot;
  if (s == "double_integrator") return OracleKind::double_integrator;
  throw InvalidScenarioError("unknown oracle '" + s + "'");
}

/// Scenario-level planner defaults.
struct ScenarioDefaults {
  double t_prop = 1.0;
  double c_max = 10.0;
  double w_x = 1.0;
  double w_c = 1.0;
  /// Collision-check spacing in seconds; 0 means one check per integrator step.
  double resolution = 0.0;
  /// Integrator step; 0 means min(t_prop / 20, 0.02).
  double integrator_step = 0.0;
};

inline SystemVariant make_system(const std::string& name, const std::map<std::string, double>& params,
                                 const StateBox& xb, const ControlBox& ub) {
  auto reject_params = [&](std::initializer_list<std::string_view> allowed) {
    for (const auto& entry : params) {
      if (std::find(allowed.begin(), allowed.end(), entry.first) == allowed.end()) {
        throw InvalidScenarioError("system.params: unknown parameter '" + entry.first + "' for " + name);
      }
    }
  };
  if (name == SingleIntegrator2d::kName) {
    reject_params({});
    return SingleIntegrator2d(xb, ub);
  }
  if (name == DoubleIntegrator1d::kName) {
    reject_params({});
    return DoubleIntegrator1d(xb, ub);
  }
  if (name == DoubleIntegrator2d::kName) {
    reject_params({});
    return DoubleIntegrator2d(xb, ub);
  }
  if (name == KinematicCar::kName) {
    reject_params({"wheelbase"});
    const auto it = params.find("wheelbase");
    return KinematicCar(xb, ub, it == params.end() ? 1.0 : it->second);
  }
  throw InvalidScenarioError("system.name: unknown system '" + name +
                             "' (expected single_integrator_2d, double_integrator_1d, double_integrator_2d "
                             "or kinematic_car)");
}

struct Scenario {
  std::string name;
  std::string system_name;
  std::map<std::string, double> system_params;
  SystemVariant system;
  ObstacleSet obstacles;
  State x_init;
  GoalRegion goal;
  ScenarioDefaults defaults;
  OracleKind oracle = OracleKind::none;

  const StateBox& state_bounds() const {
    return std::visit([](const auto& s) -> const StateBox& { return s.state_bounds(); }, system);
  }
  const ControlBox& control_bounds() const {
    return std::visit([](const auto& s) -> const ControlBox& { return s.control_bounds(); }, system);
  }
  std::size_t state_dim() const { return state_bounds().dim(); }

  /// Dimension checks, x_init free, goal center inside the bounds.
  void validate() const {
    const std::size_t d = state_dim();
    obstacles.validate();
    if (obstacles.state_bounds().dim() != d) throw InvalidScenarioError("bounds: obstacle set bounds differ from system");
    if (x_init.size() != d) throw InvalidScenarioError("x_init: expected " + std::to_string(d) + " coordinates");
    if (!x_init.all_finite()) throw InvalidScenarioError("x_init: coordinates must be finite");
    if (!obstacles.is_free(x_init)) throw InvalidScenarioError("x_init not in free space");
    goal.validate(d);
    const StateBox& b = state_bounds();
    for (std::size_t i = 0; i < goal.projection.size(); ++i) {
      const std::size_t a = goal.projection[i];
      if (!(goal.center[i] > b.lo[a] && goal.center[i] < b.hi[a])) {
        throw InvalidScenarioError("goal.center: outside the state bounds");
      }
    }
    if (!(defaults.t_prop > 0.0)) throw InvalidScenarioError("defaults.t_prop must be positive");
    if (!(defaults.c_max > 0.0)) throw InvalidScenarioError("defaults.c_max must be positive");
    MetricWeights{defaults.w_x, defaults.w_c}.validate();
    if (!(defaults.resolution >= 0.0)) throw InvalidScenarioError("defaults.resolution must be non-negative");
    if (!(defaults.integrator_step >= 0.0)) throw InvalidScenarioError("defaults.integrator_step must be non-negative");
    if (oracle == OracleKind::point_robot) {
      if (!std::holds_alternative<SingleIntegrator2d>(system)) {
        throw InvalidScenarioError("oracle: point_robot needs single_integrator_2d");
      }
      for (const auto& o : obstacles.obstacles()) {
        if (!std::holds_alternative<BoxShape>(o.shape)) throw InvalidScenarioError("oracle: point_robot needs box obstacles");
      }
    }
    if (oracle == OracleKind::double_integrator) {
      if (!std::holds_alternative<DoubleIntegrator1d>(system)) {
        throw InvalidScenarioError("oracle: double_integrator needs double_integrator_1d");
      }
      if (!obstacles.obstacles().empty()) throw InvalidScenarioError("oracle: double_integrator needs no obstacles");
    }
  }

  /// Planner parameters seeded from the scenario defaults. The caller sets the stop condition.
  PlannerParams default_params() const {
    PlannerParams p;
    p.t_prop = defaults.t_prop;
    p.c_max = defaults.c_max;
    p.weights = MetricWeights{defaults.w_x, defaults.w_c};
    p.collision_resolution = defaults.resolution;
    p.integrator_step = defaults.integrator_step;
    return p;
  }
};

}  // namespace aorrt
