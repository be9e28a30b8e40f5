#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "aorrt/scenarios/scenario.hpp"

namespace aorrt {

namespace detail {

inline Scenario assemble(std::string name, std::string system_name, std::map<std::string, double> sys_params,
                         StateBox xb, ControlBox ub, std::vector<Obstacle> obstacles, State x_init, GoalRegion goal,
                         ScenarioDefaults defaults, OracleKind oracle) {
  Scenario sc{std::move(name),
              system_name,
              sys_params,
              make_system(system_name, sys_params, xb, ub),
              ObstacleSet(std::move(obstacles), xb),
              std::move(x_init),
              std::move(goal),
              defaults,
              oracle};
  sc.validate();
  return sc;
}

}  // namespace detail

/// Point robot with speed <= 1 around a single box.
inline Scenario geo2d_one_box() {
  ScenarioDefaults d;
  d.t_prop = 1.0;
  d.c_max = 40.0;
  return detail::assemble("geo2d_one_box", "single_integrator_2d", {}, StateBox{State{-1.0, -4.0}, State{11.0, 4.0}},
                          ControlBox{Control{0.0, -M_PI}, Control{1.0, M_PI}},
                          {Obstacle::box({4.0, -1.0}, {6.0, 1.0}, {0, 1})}, State{0.0, 0.0},
                          GoalRegion{{10.0, 0.0}, 0.5, {0, 1}}, d, OracleKind::point_robot);
}

/// 1D double integrator moved from rest at 0 to rest at 4 under |a| <= 1.
inline Scenario di1d_rest_to_rest() {
  ScenarioDefaults d;
  d.t_prop = 1.0;
  d.c_max = 20.0;
  return detail::assemble("di1d_rest_to_rest", "double_integrator_1d", {}, StateBox{State{-2.0, -3.0}, State{6.0, 3.0}},
                          ControlBox{Control{-1.0}, Control{1.0}}, {}, State{0.0, 0.0},
                          GoalRegion{{4.0, 0.0}, 0.25, {0, 1}}, d, OracleKind::double_integrator);
}

/// Planar double integrator through two staggered walls.
inline Scenario di2d_two_boxes() {
  ScenarioDefaults d;
  d.t_prop = 1.0;
  d.c_max = 60.0;
  return detail::assemble(
      "di2d_two_boxes", "double_integrator_2d", {},
      StateBox{State{0.0, 0.0, -2.0, -2.0}, State{10.0, 10.0, 2.0, 2.0}},
      ControlBox{Control{-1.0, -1.0}, Control{1.0, 1.0}},
      {Obstacle::box({3.0, 0.0}, {4.0, 6.5}, {0, 1}), Obstacle::box({6.0, 3.5}, {7.0, 10.0}, {0, 1})},
      State{1.0, 1.0, 0.0, 0.0}, GoalRegion{{9.0, 9.0}, 0.5, {0, 1}}, d, OracleKind::none);
}

/// Kinematic car driving through a gap in a wall to a parking spot.
inline Scenario car_parking_lite() {
  ScenarioDefaults d;
  d.t_prop = 1.5;
  d.c_max = 60.0;
  return detail::assemble("car_parking_lite", "kinematic_car", {{"wheelbase", 1.0}},
                          StateBox{State{0.0, 0.0, -10.0}, State{12.0, 8.0, 10.0}},
                          ControlBox{Control{-1.0, -0.6}, Control{1.0, 0.6}},
                          {Obstacle::box({5.0, 0.0}, {6.0, 3.0}, {0, 1}), Obstacle::box({5.0, 5.0}, {6.0, 8.0}, {0, 1}),
                           Obstacle::box({9.0, 2.0}, {12.0, 4.5}, {0, 1})},
                          State{1.0, 1.0, 0.0}, GoalRegion{{10.5, 6.5}, 0.4, {0, 1}}, d, OracleKind::none);
}

inline std::vector<std::string> builtin_names() {
  return {"geo2d_one_box", "di1d_rest_to_rest", "di2d_two_boxes", "car_parking_lite"};
}

inline std::vector<Scenario> builtin_scenarios() {
  return {geo2d_one_box(), di1d_rest_to_rest(), di2d_two_boxes(), car_parking_lite()};
}

inline bool is_builtin(const std::string& name) {
  for (const auto& n : builtin_names()) {
    if (n == name) return true;
  }
  return false;
}

inline Scenario find_builtin(const std::string& name) {
  if (name == "geo2d_one_box") return geo2d_one_box();
  if (name == "di1d_rest_to_rest") return di1d_rest_to_rest();
  if (name == "di2d_two_boxes") return di2d_two_boxes();
  if (name == "car_parking_lite") return car_parking_lite();
  std::string valid;
  for (const auto& n : builtin_names()) valid += (valid.empty() ? "" : ", ") + n;
  throw InvalidScenarioError("unknown scenario '" + name + "' (valid: " + valid + ")");
}

}  // namespace aorrt
