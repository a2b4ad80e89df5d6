#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace spinsim {

/// Seedable, portable random source. The engine is std::mt19937_64 (its
/// output sequence is fixed by the standard); all distributions are derived
/// here from raw 64-bit draws so that streams are bit-identical across
/// platforms and standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1) with 53 bits of precision.
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, n).
  std::uint64_t uniform_index(std::uint64_t n) {
    // modulo bias is below 2^-40 for the n used here (small gate/axis counts)
    return next_u64() % n;
  }

  /// Standard normal via Box-Muller (one value per call, no caching so the
  /// stream position is easy to reason about).
  double normal() {
    double u1 = uniform();
    double u2 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
  }

 private:
  std::mt19937_64 engine_;
};

/// Derives independent child seeds from a base seed (splitmix64 step), used
/// for per-trajectory and per-scale streams so results do not depend on
/// execution order.
inline std::uint64_t split_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace spinsim
