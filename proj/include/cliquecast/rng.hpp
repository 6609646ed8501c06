#pragma once

// SplitMix64: small, portable, seedable 64-bit generator. std::mt19937_64
// would also be portable, but the standard distributions are not, and the
// experiment harness promises byte-identical output across platforms.

#include <cstdint>

namespace cliquecast {

inline constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

  constexpr std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ull;
    return mix64(state_);
  }

  // Uniform in [0, n), n >= 1. Rejection keeps the draw unbiased.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % n;
    }
  }

  // Uniform in [lo, hi], inclusive.
  std::uint64_t in_range(std::uint64_t lo, std::uint64_t hi) {
    return lo + below(hi - lo + 1);
  }

 private:
  std::uint64_t state_;
};

// Stream layout: substream i of a master seed starts from
// mix64(seed) ^ mix64(i + 2^64/phi). Used to hand independent generators to
// parallel workers keyed by sample index rather than by scheduling order.
inline SplitMix64 substream(std::uint64_t seed, std::uint64_t index) {
  return SplitMix64(mix64(seed) ^ mix64(index + 0x9e3779b97f4a7c15ull));
}

}  // namespace cliquecast
