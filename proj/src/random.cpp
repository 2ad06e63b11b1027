#include "firstswap/random.hpp"

#include <stdexcept>

namespace firstswap {

std::uint64_t SplitMix64::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("SplitMix64::below needs a positive bound");
  // Largest multiple of bound that fits, minus one.
  const std::uint64_t limit = max() - (max() % bound + 1) % bound;
  std::uint64_t x;
  do {
    x = (*this)();
  } while (x > limit);
  return x % bound;
}

long SplitMix64::between(long lo, long hi) {
  if (hi < lo) throw std::invalid_argument("SplitMix64::between: empty range");
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<long>(below(span));
}

Rational random_small_rational(SplitMix64& rng) {
  const long u = rng.between(-16, 16);
  const long v = rng.between(1, 16);
  return Rational(u, v);
}

}  // namespace firstswap
