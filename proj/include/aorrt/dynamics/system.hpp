#pragma once

#include <cmath>
#include <concepts>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "aorrt/core/coords.hpp"
#include "aorrt/core/errors.hpp"

namespace aorrt {

/// Lipschitz constants of f and g in x and u.
struct LipschitzConstants {
  double kx_f = 0.0;
  double ku_f = 0.0;
  double kx_g = 0.0;
  double ku_g = 0.0;

  /// Constants of the augmented system F = (f, g).
  double augmented_ku() const { return std::sqrt(ku_f * ku_f + ku_g * ku_g); }
  double augmented_kx() const { return std::sqrt(kx_f * kx_f + kx_g * kx_g); }
};

/// Dimensions, box bounds and optional declared Lipschitz constants shared by
/// every system definition.
class SystemBase {
 public:
  SystemBase(std::size_t state_dim, std::size_t control_dim, StateBox state_bounds, ControlBox control_bounds)
      : state_dim_(state_dim),
        control_dim_(control_dim),
        state_bounds_(std::move(state_bounds)),
        control_bounds_(std::move(control_bounds)) {
    if (state_dim_ == 0 || state_dim_ >= kMaxStateDim) {
      throw InvalidScenarioError("state dimension must be in [1, " + std::to_string(kMaxStateDim - 1) + "]");
    }
    if (control_dim_ == 0 || control_dim_ > kMaxControlDim) {
      throw InvalidScenarioError("control dimension must be in [1, " + std::to_string(kMaxControlDim) + "]");
    }
    if (state_bounds_.dim() != state_dim_ || !state_bounds_.valid()) {
      throw InvalidScenarioError("state bounds do not match the system's state dimension");
    }
    if (control_bounds_.dim() != control_dim_ || !control_bounds_.valid()) {
      throw InvalidScenarioError("control bounds do not match the system's control dimension");
    }
  }

  std::size_t state_dim() const { return state_dim_; }
  std::size_t control_dim() const { return control_dim_; }
  const StateBox& state_bounds() const { return state_bounds_; }
  const ControlBox& control_bounds() const { return control_bounds_; }
  const std::optional<LipschitzConstants>& declared_lipschitz() const { return declared_; }
  void set_declared_lipschitz(std::optional<LipschitzConstants> k) { declared_ = k; }

 protected:
  std::size_t state_dim_;
  std::size_t control_dim_;
  StateBox state_bounds_;
  ControlBox control_bounds_;
  std::optional<LipschitzConstants> declared_;
};

/// x' = f(x, u) with running cost g(x, u) >= 0 over box-bounded X and U.
template <class S>
concept DynamicalSystem = requires(const S& s, const State& x, const Control& u) {
  { s.state_dim() } -> std::convertible_to<std::size_t>;
  { s.control_dim() } -> std::convertible_to<std::size_t>;
  { s.derivative(x, u) } -> std::same_as<State>;
  { s.cost_rate(x, u) } -> std::convertible_to<double>;
  { s.state_bounds() } -> std::convertible_to<const StateBox&>;
  { s.control_bounds() } -> std::convertible_to<const ControlBox&>;
  { s.declared_lipschitz() } -> std::convertible_to<const std::optional<LipschitzConstants>&>;
};

/// The system F(y, u) = (f(x, u), g(x, u)) over Y = X x [0, c_max].
///
/// F carries no running cost of its own: planning with F is a feasibility
/// problem, the original cost lives in the last state coordinate.
template <DynamicalSystem Base>
class AugmentedSystem : public SystemBase {
 public:
  AugmentedSystem(const Base& base, double c_max)
      : SystemBase(base.state_dim() + 1, base.control_dim(), augment(base.state_bounds(), c_max),
                   base.control_bounds()),
        base_(&base) {
    if (auto k = base.declared_lipschitz()) {
      set_declared_lipschitz(LipschitzConstants{k->augmented_kx(), k->augmented_ku(), 0.0, 0.0});
    }
  }

  const Base& base() const { return *base_; }

  State derivative(const State& y, const Control& u) const {
    const std::size_t d = base_->state_dim();
    State x(d);
    for (std::size_t i = 0; i < d; ++i) x[i] = y[i];
    const State fx = base_->derivative(x, u);
    State out(d + 1);
    for (std::size_t i = 0; i < d; ++i) out[i] = fx[i];
    out[d] = base_->cost_rate(x, u);
    return out;
  }

  double cost_rate(const State&, const Control&) const { return 0.0; }

 private:
  static StateBox augment(const StateBox& box, double c_max) {
    if (!(c_max > 0.0)) throw ParameterError("augmented system needs c_max > 0");
    StateBox out{State(box.dim() + 1), State(box.dim() + 1)};
    for (std::size_t i = 0; i < box.dim(); ++i) {
      out.lo[i] = box.lo[i];
      out.hi[i] = box.hi[i];
    }
    out.lo[box.dim()] = 0.0;
    out.hi[box.dim()] = c_max;
    return out;
  }

  const Base* base_;
};

}  // namespace aorrt
