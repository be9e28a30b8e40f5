#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>

#include "aorrt/core/types.hpp"
#include "aorrt/dynamics/system.hpp"

namespace aorrt {

/// Fixed-step classical Runge-Kutta; the last step is shrunk to land exactly
/// on the requested duration.
struct IntegratorConfig {
  double step = 0.02;
  double max_duration = std::numeric_limits<double>::infinity();

  /// Default step min(t_prop / 20, 0.02) unless `step_override` > 0.
  static IntegratorConfig for_horizon(double t_prop, double step_override = 0.0) {
    IntegratorConfig cfg;
    cfg.step = step_override > 0.0 ? step_override : std::min(t_prop / 20.0, 0.02);
    cfg.max_duration = t_prop;
    return cfg;
  }

  void validate() const {
    if (!(step > 0.0) || !std::isfinite(step)) throw ParameterError("integrator step must be positive");
    if (!(max_duration > 0.0)) throw ParameterError("integrator max_duration must be positive");
  }
};

/// Result of one joint (state, cost) pass. `increment` is the cost gained
/// along the pass and `c == c0 + increment` holds exactly.
struct JointPassResult {
  State x;
  double c = 0.0;
  double increment = 0.0;
  double time = 0.0;
  bool aborted = false;
};

namespace detail {

/// One RK4 step of (x, c)' = (f(x, u), g(x, u)) written as a displacement
/// from the pass start (x0, c0): the step advances (dx, dc), and the states
/// are x0 + dx. Every coordinate is treated the same way, so integrating the
/// augmented system with c as its last coordinate performs the same
/// operations as the joint pass.
template <DynamicalSystem S>
inline void rk4_joint_step(const S& sys, const State& x0, State& dx, double& dc, const Control& u, double h) {
  const std::size_t d = x0.size();
  const double half = 0.5 * h;
  const double sixth = h / 6.0;

  State base(d);
  for (std::size_t i = 0; i < d; ++i) base[i] = x0[i] + dx[i];
  const State k1 = sys.derivative(base, u);
  const double g1 = sys.cost_rate(base, u);
  State stage(d);
  for (std::size_t i = 0; i < d; ++i) stage[i] = base[i] + half * k1[i];
  const State k2 = sys.derivative(stage, u);
  const double g2 = sys.cost_rate(stage, u);
  for (std::size_t i = 0; i < d; ++i) stage[i] = base[i] + half * k2[i];
  const State k3 = sys.derivative(stage, u);
  const double g3 = sys.cost_rate(stage, u);
  for (std::size_t i = 0; i < d; ++i) stage[i] = base[i] + h * k3[i];
  const State k4 = sys.derivative(stage, u);
  const double g4 = sys.cost_rate(stage, u);

  for (std::size_t i = 0; i < d; ++i) dx[i] += sixth * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  dc += sixth * (g1 + 2.0 * g2 + 2.0 * g3 + g4);
}

}  // namespace detail

/// Integrates (x, c) jointly from (x0, c0) under constant `u` for `duration`.
///
/// `on_sample(time, x, c)` is called after every step; returning false stops
/// the pass early (result.aborted = true). Throws PropagationDivergedError on
/// a non-finite state or cost.
template <DynamicalSystem S, class OnSample>
JointPassResult integrate_joint(const S& sys, const State& x0, double c0, const Control& u, double duration,
                                const IntegratorConfig& cfg, OnSample&& on_sample) {
  if (!(duration >= 0.0)) throw ParameterError("propagation duration must be non-negative");
  if (duration > cfg.max_duration) throw ParameterError("propagation duration exceeds T_prop");
  const double h = cfg.step;
  const std::size_t d = x0.size();
  JointPassResult r{x0, c0, 0.0, 0.0, false};
  State dx(d);
  std::size_t i = 0;
  while (r.time < duration) {
    double t_next = static_cast<double>(i + 1) * h;
    if (t_next > duration || duration - t_next <= 1e-9 * h) t_next = duration;
    detail::rk4_joint_step(sys, x0, dx, r.increment, u, t_next - r.time);
    for (std::size_t k = 0; k < d; ++k) r.x[k] = x0[k] + dx[k];
    r.c = c0 + r.increment;
    if (!r.x.all_finite() || !std::isfinite(r.c)) {
      throw PropagationDivergedError("non-finite state encountered during propagation");
    }
    r.time = t_next;
    ++i;
    if (!on_sample(r.time, r.x, r.c)) {
      r.aborted = true;
      return r;
    }
  }
  return r;
}

/// Integrates x' = f(x, u) for duration `t`; samples at every integrator step.
/// The trajectory's cost field is left at zero.
template <DynamicalSystem S>
Trajectory propagate(const State& x, const Control& u, double t, const S& sys, const IntegratorConfig& cfg) {
  cfg.validate();
  Trajectory traj;
  traj.samples.push_back({0.0, x});
  integrate_joint(sys, x, 0.0, u, t, cfg, [&](double time, const State& xs, double) {
    traj.samples.push_back({time, xs});
    return true;
  });
  traj.segments.push_back({u, t});
  return traj;
}

/// Integrates the augmented system F from y; the returned trajectory's cost is
/// the cost increment, with y.c + cost == returned c exactly.
template <DynamicalSystem S>
std::pair<AugmentedState, Trajectory> propagate_augmented(const AugmentedState& y, const Control& u, double t,
                                                          const S& sys, const IntegratorConfig& cfg) {
  cfg.validate();
  Trajectory traj;
  traj.samples.push_back({0.0, y.x});
  const JointPassResult r = integrate_joint(sys, y.x, y.c, u, t, cfg, [&](double time, const State& xs, double) {
    traj.samples.push_back({time, xs});
    return true;
  });
  traj.segments.push_back({u, t});
  traj.cost = r.increment;
  return {AugmentedState{r.x, r.c}, std::move(traj)};
}

/// Recomputes the cost quadrature over the stored samples with the same RK4
/// rule used during propagation.
template <DynamicalSystem S>
double trajectory_cost(const Trajectory& traj, const S& sys) {
  if (traj.samples.size() <= 1) return 0.0;
  if (traj.segments.empty()) throw ValidationError("trajectory has samples but no control segments");
  const double total = traj.duration();
  const double tol = 1e-9 * std::max(1.0, total);
  if (std::abs(traj.segment_duration() - total) > tol) {
    throw ValidationError("control segment durations do not sum to the trajectory duration");
  }
  std::size_t k = 0;
  double seg_start = 0.0;
  double seg_end = traj.segments[0].duration;
  double cost = 0.0;
  for (std::size_t i = 0; i + 1 < traj.samples.size(); ++i) {
    const double t0 = traj.samples[i].time;
    const double t1 = traj.samples[i + 1].time;
    if (!(t1 > t0)) throw ValidationError("trajectory sample times must be strictly increasing");
    while (t1 > seg_end + tol && k + 1 < traj.segments.size()) {
      ++k;
      seg_start = seg_end;
      seg_end += traj.segments[k].duration;
    }
    if (t0 < seg_start - tol || t1 > seg_end + tol) {
      throw ValidationError("trajectory sample interval straddles a control segment boundary");
    }
    State dx(traj.samples[i].state.size());
    double dc = 0.0;
    detail::rk4_joint_step(sys, traj.samples[i].state, dx, dc, traj.segments[k].u, t1 - t0);
    cost += dc;
  }
  return cost;
}

}  // namespace aorrt
