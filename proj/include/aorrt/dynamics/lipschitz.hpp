#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>

#include "aorrt/core/random.hpp"
#include "aorrt/dynamics/system.hpp"

namespace aorrt {

/// Empirical Lipschitz constants: maxima of difference quotients over
/// sampled in-bounds pairs.
struct LipschitzReport {
  std::size_t pairs = 0;
  double kx_f = 0.0;
  double ku_f = 0.0;
  double kx_g = 0.0;
  double ku_g = 0.0;
  /// Sampled constants of the augmented system F = (f, g) over Y = X x R+.
  double kx_aug = 0.0;
  double ku_aug = 0.0;
  /// Bounds sqrt(kx_f^2 + kx_g^2), sqrt(ku_f^2 + ku_g^2) from declared
  /// constants, when the system declares them.
  std::optional<double> declared_kx_bound;
  std::optional<double> declared_ku_bound;
  /// Every sampled F ratio stayed under the composite bound (declared when
  /// available, else built from the empirical components), with 1e-6 relative slack.
  bool composition_holds = true;
};

namespace detail {

inline double norm_diff(const State& a, const State& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

inline double norm_diff(const Control& a, const Control& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

}  // namespace detail

/// Samples `n_pairs` pairs for each of the x- and u-quotients of f, g and F.
/// Cost coordinates of augmented pairs are drawn from [0, 1].
template <DynamicalSystem S>
LipschitzReport verify_lipschitz(const S& sys, RandomStream& stream, std::size_t n_pairs) {
  if (n_pairs == 0) throw ParameterError("verify_lipschitz needs at least one pair");
  const StateBox& xb = sys.state_bounds();
  const ControlBox& ub = sys.control_bounds();
  LipschitzReport rep;
  rep.pairs = n_pairs;
  if (auto k = sys.declared_lipschitz()) {
    rep.declared_kx_bound = k->augmented_kx();
    rep.declared_ku_bound = k->augmented_ku();
  }
  constexpr double kSlack = 1e-6;

  for (std::size_t n = 0; n < n_pairs; ++n) {
    // x-quotients: F(y0, u) - F(y1, u) with y = (x, c).
    const State x0 = stream.uniform_in(xb);
    const State x1 = stream.uniform_in(xb);
    const double c0 = stream.uniform01();
    const double c1 = stream.uniform01();
    const Control u = stream.uniform_in(ub);
    const double dx = detail::norm_diff(x0, x1);
    if (dx > 0.0) {
      const double df = detail::norm_diff(sys.derivative(x0, u), sys.derivative(x1, u));
      const double dg = std::abs(sys.cost_rate(x0, u) - sys.cost_rate(x1, u));
      const double dy = std::sqrt(dx * dx + (c0 - c1) * (c0 - c1));
      rep.kx_f = std::max(rep.kx_f, df / dx);
      rep.kx_g = std::max(rep.kx_g, dg / dx);
      const double ratio_aug = std::sqrt(df * df + dg * dg) / dy;
      rep.kx_aug = std::max(rep.kx_aug, ratio_aug);
    }

    // u-quotients: F(y, u0) - F(y, u1).
    const State x = stream.uniform_in(xb);
    const Control u0 = stream.uniform_in(ub);
    const Control u1 = stream.uniform_in(ub);
    const double du = detail::norm_diff(u0, u1);
    if (du > 0.0) {
      const double df = detail::norm_diff(sys.derivative(x, u0), sys.derivative(x, u1));
      const double dg = std::abs(sys.cost_rate(x, u0) - sys.cost_rate(x, u1));
      rep.ku_f = std::max(rep.ku_f, df / du);
      rep.ku_g = std::max(rep.ku_g, dg / du);
      rep.ku_aug = std::max(rep.ku_aug, std::sqrt(df * df + dg * dg) / du);
    }
  }

  const double kx_bound = rep.declared_kx_bound.value_or(std::sqrt(rep.kx_f * rep.kx_f + rep.kx_g * rep.kx_g));
  const double ku_bound = rep.declared_ku_bound.value_or(std::sqrt(rep.ku_f * rep.ku_f + rep.ku_g * rep.ku_g));
  rep.composition_holds = rep.kx_aug <= kx_bound * (1.0 + kSlack) + 1e-12 &&
                          rep.ku_aug <= ku_bound * (1.0 + kSlack) + 1e-12;
  return rep;
}

}  // namespace aorrt
