#pragma once

#include <cstdint>

namespace polyconv {

// SplitMix64 (Steele, Lea, Flood 2014). Seeds appear in certificates, so the
// update is spelled out here rather than delegated to an implementation-
// defined std:: engine:
//
//   state += 0x9e3779b97f4a7c15
//   z = state
//   z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9
//   z = (z ^ (z >> 27)) * 0x94d049bb133111eb
//   return z ^ (z >> 31)
//
// All arithmetic is modulo 2^64, so the stream is identical on every platform.
class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  constexpr std::uint64_t next() noexcept {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Random sign from the top bit: +1 when it is clear, -1 when set.
  constexpr int next_sign() noexcept { return (next() >> 63) ? -1 : 1; }

  // Uniform integer in [0, bound) by rejection; bound must be positive.
  constexpr std::uint64_t next_below(std::uint64_t bound) noexcept {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t r = next();
    while (r >= limit) r = next();
    return r % bound;
  }

  // Uniform double in [0, 1) from the top 53 bits.
  constexpr double next_unit() noexcept {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

}  // namespace polyconv
