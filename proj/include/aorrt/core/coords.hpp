#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>

#include "aorrt/core/errors.hpp"

namespace aorrt {

inline constexpr std::size_t kMaxStateDim = 8;
inline constexpr std::size_t kMaxControlDim = 4;

/// Fixed-capacity coordinate vector with a runtime dimension.
///
/// The tag keeps states and controls from being mixed up; storage is inline
/// so the planner inner loops never allocate.
template <class Tag, std::size_t Capacity>
class Coords {
 public:
  static constexpr std::size_t kCapacity = Capacity;

  Coords() = default;

  explicit Coords(std::size_t n, double fill = 0.0) : size_(check_size(n)) {
    std::fill_n(data_.begin(), n, fill);
  }

  Coords(std::initializer_list<double> values) : size_(check_size(values.size())) {
    std::copy(values.begin(), values.end(), data_.begin());
  }

  static Coords from(std::span<const double> values) {
    Coords out(values.size());
    std::copy(values.begin(), values.end(), out.data_.begin());
    return out;
  }

  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  double& operator[](std::size_t i) { return data_[i]; }
  double operator[](std::size_t i) const { return data_[i]; }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }
  double* begin() { return data_.data(); }
  double* end() { return data_.data() + size_; }
  const double* begin() const { return data_.data(); }
  const double* end() const { return data_.data() + size_; }

  std::span<const double> span() const { return {data_.data(), size_}; }
  std::span<double> span() { return {data_.data(), size_}; }

  bool all_finite() const {
    return std::all_of(begin(), end(), [](double v) { return std::isfinite(v); });
  }

  friend bool operator==(const Coords& a, const Coords& b) {
    return a.size_ == b.size_ && std::equal(a.begin(), a.end(), b.begin());
  }

 private:
  static std::size_t check_size(std::size_t n) {
    if (n > Capacity) throw ParameterError("coordinate dimension exceeds capacity");
    return n;
  }

  std::array<double, Capacity> data_{};
  std::size_t size_ = 0;
};

/// Bitwise equality, distinguishing -0.0 from 0.0 (used by the replay checks).
template <class Tag, std::size_t N>
bool bit_equal(const Coords<Tag, N>& a, const Coords<Tag, N>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::bit_cast<std::uint64_t>(a[i]) != std::bit_cast<std::uint64_t>(b[i])) return false;
  }
  return true;
}

inline bool bit_equal(double a, double b) {
  return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b);
}

struct StateTag {};
struct ControlTag {};

using State = Coords<StateTag, kMaxStateDim>;
using Control = Coords<ControlTag, kMaxControlDim>;

/// Axis-aligned box over a coordinate type.
template <class V>
struct Box {
  V lo;
  V hi;

  std::size_t dim() const { return lo.size(); }

  bool valid() const {
    if (lo.size() != hi.size() || lo.empty()) return false;
    for (std::size_t i = 0; i < lo.size(); ++i) {
      if (!std::isfinite(lo[i]) || !std::isfinite(hi[i]) || !(lo[i] <= hi[i])) return false;
    }
    return true;
  }

  bool contains_closed(const V& v) const {
    for (std::size_t i = 0; i < lo.size(); ++i) {
      if (v[i] < lo[i] || v[i] > hi[i]) return false;
    }
    return true;
  }

  bool contains_open(const V& v) const {
    for (std::size_t i = 0; i < lo.size(); ++i) {
      if (!(v[i] > lo[i] && v[i] < hi[i])) return false;
    }
    return true;
  }
};

using StateBox = Box<State>;
using ControlBox = Box<Control>;

}  // namespace aorrt
