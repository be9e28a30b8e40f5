#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "aorrt/core/coords.hpp"

namespace aorrt {

/// Purposes for named substreams. Values are part of the reproducibility
/// contract and must not be renumbered.
enum class StreamPurpose : std::uint64_t {
  state = 1,
  cost = 2,
  duration = 3,
  control = 4,
  goal = 5,
  expansion = 6,
  lipschitz = 7,
  test = 8,
};

/// Deterministic random stream.
///
/// Engine is std::mt19937_64 (its output sequence is fixed by the standard).
/// Substreams are seeded through std::seed_seq, whose mixing is also fully
/// specified, and reals are formed from the top 53 bits of a draw, so every
/// platform sees the same sequence for the same seed.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed = 0) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }

  /// Independent stream keyed by (index, purpose); does not advance `*this`.
  RandomStream substream(std::uint64_t index, std::uint64_t purpose) const {
    std::seed_seq seq{lo32(seed_), hi32(seed_), lo32(index), hi32(index), lo32(purpose), hi32(purpose)};
    RandomStream out;
    out.seed_ = seed_;
    out.engine_.seed(seq);
    return out;
  }

  RandomStream substream(std::uint64_t index, StreamPurpose purpose) const {
    return substream(index, static_cast<std::uint64_t>(purpose));
  }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1).
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Uniform integer on [0, n); n > 0.
  std::size_t uniform_index(std::size_t n) {
    const std::uint64_t bound = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t r;
    do {
      r = engine_();
    } while (r >= limit);
    return static_cast<std::size_t>(r % bound);
  }

  template <class V>
  V uniform_in(const Box<V>& box) {
    V out(box.dim());
    for (std::size_t i = 0; i < box.dim(); ++i) out[i] = uniform(box.lo[i], box.hi[i]);
    return out;
  }

 private:
  static std::uint32_t lo32(std::uint64_t v) { return static_cast<std::uint32_t>(v & 0xffffffffu); }
  static std::uint32_t hi32(std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); }

  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

/// The named substreams a planner consumes. Drawing from one never perturbs
/// another, which is what lets two planner formulations be run in lockstep.
struct PlannerStreams {
  RandomStream state;
  RandomStream cost;
  RandomStream duration;
  RandomStream control;
  RandomStream goal;
  RandomStream expansion;

  static PlannerStreams from(const RandomStream& master, std::uint64_t index = 0) {
    return PlannerStreams{
        master.substream(index, StreamPurpose::state),    master.substream(index, StreamPurpose::cost),
        master.substream(index, StreamPurpose::duration), master.substream(index, StreamPurpose::control),
        master.substream(index, StreamPurpose::goal),     master.substream(index, StreamPurpose::expansion),
    };
  }

  /// Streams for benchmark trial `trial` under `base_seed`.
  static PlannerStreams for_trial(std::uint64_t base_seed, std::uint64_t trial) {
    return from(RandomStream(base_seed + trial), trial);
  }
};

}  // namespace aorrt
