#pragma once

// Deterministic, platform-independent randomness for the seeded suites.
// splitmix64 is used directly so that reports are byte-identical everywhere
// (standard-library distributions are implementation-defined).

#include <cstdint>

#include "cosets/scalars.hpp"

namespace cosets {

class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, n); n > 0.
  std::uint64_t below(std::uint64_t n) { return next() % n; }

  long rangeInclusive(long lo, long hi) {
    return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

private:
  std::uint64_t state_;
};

inline std::uint64_t deriveSeed(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 rng(seed ^ (0x632be59bd9b4e019ULL + index * 0x9e3779b97f4a7c15ULL));
  rng.next();
  return rng.next();
}

/// Small rational with numerator in [-2,2] and denominator in {1,2,3}.
inline Rational smallRational(SplitMix64& rng) {
  return Rational(rng.rangeInclusive(-2, 2), rng.rangeInclusive(1, 3));
}

inline GaussRational smallGaussRational(SplitMix64& rng) {
  return {smallRational(rng), smallRational(rng)};
}

template <typename K>
K smallScalar(SplitMix64& rng);

template <>
inline Rational smallScalar<Rational>(SplitMix64& rng) {
  return smallRational(rng);
}

template <>
inline GaussRational smallScalar<GaussRational>(SplitMix64& rng) {
  return smallGaussRational(rng);
}

}  // namespace cosets
