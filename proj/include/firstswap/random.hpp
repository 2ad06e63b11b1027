#pragma once

#include "firstswap/rational.hpp"

#include <cstdint>
#include <limits>

namespace firstswap {

/// SplitMix64 (Steele, Lea, Flood 2014). Satisfies
/// UniformRandomBitGenerator; split() derives an independent stream.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  SplitMix64 split() { return SplitMix64((*this)() ^ 0x5851f42d4c957f2dULL); }

  /// Uniform integer in [0, bound), bound > 0, by rejection (no modulo bias).
  std::uint64_t below(std::uint64_t bound);

  /// Uniform integer in [lo, hi].
  long between(long lo, long hi);

  /// Uniform double in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

/// u/v with u uniform in [-16, 16] and v uniform in [1, 16].
Rational random_small_rational(SplitMix64& rng);

}  // namespace firstswap
