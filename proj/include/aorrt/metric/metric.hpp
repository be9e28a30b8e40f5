#pragma once

#include <cmath>
#include <cstddef>

#include "aorrt/core/types.hpp"

namespace aorrt {

/// Weights of the state-cost metric sqrt(w_x |x_a - x_b|^2 + w_c |c_a - c_b|^2).
struct MetricWeights {
  double w_x = 1.0;
  double w_c = 1.0;

  void validate() const {
    if (!std::isfinite(w_x) || !std::isfinite(w_c) || w_x < 0.0 || w_c < 0.0 || !(w_x + w_c > 0.0)) {
      throw ParameterError("metric weights must be finite, non-negative and not both zero");
    }
  }

  /// Weights of the 2D geometric demonstration (w_x = 1, w_c = 0.2).
  static MetricWeights geometric_demo() { return {1.0, 0.2}; }
};

inline double squared_dist(const AugmentedState& a, const AugmentedState& b, const MetricWeights& w) {
  if (a.x.size() != b.x.size()) throw ParameterError("metric: state dimension mismatch");
  double sx = 0.0;
  for (std::size_t i = 0; i < a.x.size(); ++i) {
    const double d = a.x[i] - b.x[i];
    sx += d * d;
  }
  const double dc = a.c - b.c;
  return w.w_x * sx + w.w_c * (dc * dc);
}

inline double dist(const AugmentedState& a, const AugmentedState& b, const MetricWeights& w) {
  return std::sqrt(squared_dist(a, b, w));
}

/// Flat-point form of the weighted metric: points are (x_0..x_{d-1}, c).
/// Evaluates in the same operation order as squared_dist, so results agree bit for bit.
struct AugmentedMetric {
  std::size_t state_dim = 0;
  MetricWeights weights;

  double dist2(const double* a, const double* b) const {
    double sx = 0.0;
    for (std::size_t i = 0; i < state_dim; ++i) {
      const double d = a[i] - b[i];
      sx += d * d;
    }
    const double dc = a[state_dim] - b[state_dim];
    return weights.w_x * sx + weights.w_c * (dc * dc);
  }

  double axis_weight(std::size_t axis) const { return axis < state_dim ? weights.w_x : weights.w_c; }
};

/// Unweighted Euclidean metric over `dim` coordinates.
struct EuclideanMetric {
  std::size_t dim = 0;

  double dist2(const double* a, const double* b) const {
    double s = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      const double d = a[i] - b[i];
      s += d * d;
    }
    return s;
  }

  double axis_weight(std::size_t) const { return 1.0; }
};

}  // namespace aorrt
