#pragma once

#include <cstdint>

namespace weaklab {

/// splitmix64; explicit so seeded runs are reproducible across standard
/// libraries (std:: distributions are implementation-defined).
struct SplitMix {
  std::uint64_t state = 0;

  std::uint64_t next_u64() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  /// Uniform in [0,1).
  double next_unit() { return (next_u64() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * next_unit();
  }
  /// Uniform integer in [0, n).
  std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }
};

} // namespace weaklab
