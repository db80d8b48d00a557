#pragma once

#include <cmath>
#include <cstdint>
#include <span>

namespace specrisk {

/// Deterministic 64-bit generator (splitmix64 stream). All randomness in the
/// toolkit flows from one root seed through named substreams so results are
/// identical across platforms and schedules.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  /// Substream derivation: mixes the ids into the seed so that streams for
  /// different (simulation, column, ...) indices are independent.
  static Rng substream(std::uint64_t seed, std::uint64_t id0, std::uint64_t id1 = 0) {
    Rng r(seed);
    r.state_ ^= mix(id0 + 0x9e3779b97f4a7c15ULL);
    r.state_ ^= mix(id1 + 0xbf58476d1ce4e5b9ULL);
    return r;
  }

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix(state_);
  }

  /// Uniform integer in [0, n), unbiased (rejection sampling).
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v = next_u64();
    while (v >= limit) v = next_u64();
    return v % n;
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller (uncached, so the draw count per sample
  /// is fixed and streams stay reproducible).
  double gaussian() {
    double u1 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
  }

  /// In-place Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::span<T> values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(values[i - 1], values[j]);
    }
  }

private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

}  // namespace specrisk
