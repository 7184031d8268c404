#pragma once

#include <cstdint>

namespace fibmap {

/// SplitMix64: 64-bit state, one multiply-shift-xor avalanche per draw
/// (Steele, Lea, Flood 2014). Substreams for batch b of a run seeded with s
/// are spawned as SplitMix64(s ^ golden * (b+1)), which keeps results
/// independent of how batches are assigned to workers.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  static SplitMix64 substream(std::uint64_t seed, std::uint64_t index) {
    return SplitMix64(seed ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
  }

 private:
  std::uint64_t state_;
};

}  // namespace fibmap
