#pragma once

#include <cmath>
#include <functional>
#include <string_view>
#include <utility>
#include <vector>

#include "aorrt/dynamics/system.hpp"

namespace aorrt {

/// Velocity-bounded point robot, x' = u with ||u|| <= u_max.
///
/// The control is written in polar form (speed, heading) so that the
/// admissible set is a box: u = (v, phi), x' = v (cos phi, sin phi).
/// Cost is elapsed time.
class SingleIntegrator2d : public SystemBase {
 public:
  static constexpr std::string_view kName = "single_integrator_2d";

  SingleIntegrator2d(StateBox state_bounds, ControlBox control_bounds)
      : SystemBase(2, 2, std::move(state_bounds), std::move(control_bounds)) {
    set_declared_lipschitz(LipschitzConstants{0.0, std::max(1.0, max_speed()), 0.0, 0.0});
  }

  double max_speed() const {
    return std::max(std::abs(control_bounds_.lo[0]), std::abs(control_bounds_.hi[0]));
  }

  State derivative(const State&, const Control& u) const {
    return State{u[0] * std::cos(u[1]), u[0] * std::sin(u[1])};
  }
  double cost_rate(const State&, const Control&) const { return 1.0; }

  static std::vector<std::size_t> workspace_axes() { return {0, 1}; }
};

/// 1D double integrator, state (p, v), control a; time cost.
class DoubleIntegrator1d : public SystemBase {
 public:
  static constexpr std::string_view kName = "double_integrator_1d";

  DoubleIntegrator1d(StateBox state_bounds, ControlBox control_bounds)
      : SystemBase(2, 1, std::move(state_bounds), std::move(control_bounds)) {
    set_declared_lipschitz(LipschitzConstants{1.0, 1.0, 0.0, 0.0});
  }

  State derivative(const State& x, const Control& u) const { return State{x[1], u[0]}; }
  double cost_rate(const State&, const Control&) const { return 1.0; }

  static std::vector<std::size_t> workspace_axes() { return {0}; }
};

/// Planar double integrator, state (px, py, vx, vy), control (ax, ay); time cost.
class DoubleIntegrator2d : public SystemBase {
 public:
  static constexpr std::string_view kName = "double_integrator_2d";

  DoubleIntegrator2d(StateBox state_bounds, ControlBox control_bounds)
      : SystemBase(4, 2, std::move(state_bounds), std::move(control_bounds)) {
    set_declared_lipschitz(LipschitzConstants{1.0, 1.0, 0.0, 0.0});
  }

  State derivative(const State& x, const Control& u) const { return State{x[2], x[3], u[0], u[1]}; }
  double cost_rate(const State&, const Control&) const { return 1.0; }

  static std::vector<std::size_t> workspace_axes() { return {0, 1}; }
};

/// Kinematic car, state (x, y, theta), control (speed, steering angle):
/// x' = v cos(theta), y' = v sin(theta), theta' = v tan(steer) / wheelbase.
class KinematicCar : public SystemBase {
 public:
  static constexpr std::string_view kName = "kinematic_car";

  KinematicCar(StateBox state_bounds, ControlBox control_bounds, double wheelbase = 1.0)
      : SystemBase(3, 2, std::move(state_bounds), std::move(control_bounds)), wheelbase_(wheelbase) {
    if (!(wheelbase_ > 0.0)) throw InvalidScenarioError("kinematic_car wheelbase must be positive");
    const double steer = std::max(std::abs(control_bounds_.lo[1]), std::abs(control_bounds_.hi[1]));
    if (!(steer < M_PI / 2)) throw InvalidScenarioError("kinematic_car steering bound must be below pi/2");
  }

  double wheelbase() const { return wheelbase_; }

  State derivative(const State& x, const Control& u) const {
    return State{u[0] * std::cos(x[2]), u[0] * std::sin(x[2]), u[0] * std::tan(u[1]) / wheelbase_};
  }
  double cost_rate(const State&, const Control&) const { return 1.0; }

  static std::vector<std::size_t> workspace_axes() { return {0, 1}; }

 private:
  double wheelbase_;
};

/// System assembled from callables; used for analytic test systems.
class FunctionSystem : public SystemBase {
 public:
  using Derivative = std::function<State(const State&, const Control&)>;
  using CostRate = std::function<double(const State&, const Control&)>;

  FunctionSystem(StateBox state_bounds, ControlBox control_bounds, Derivative f, CostRate g)
      : SystemBase(state_bounds.dim(), control_bounds.dim(), std::move(state_bounds), std::move(control_bounds)),
        f_(std::move(f)),
        g_(std::move(g)) {}

  State derivative(const State& x, const Control& u) const { return f_(x, u); }
  double cost_rate(const State& x, const Control& u) const { return g_(x, u); }

 private:
  Derivative f_;
  CostRate g_;
};

}  // namespace aorrt
