#pragma once

#include <cstdint>

namespace branchtrace {

/// xorshift64* generator used for every seeded stream in the project
/// (random CA rows, avalanche inputs, calibration streams).
///
/// Seeding: state = splitmix64(seed), replaced by 0x9E3779B97F4A7C15 if that
/// happens to be zero. Each call to next() advances the state with
/// x ^= x >> 12; x ^= x << 25; x ^= x >> 27 and returns x * 0x2545F4914F6CDD1D.
/// next_bit() is the top bit of next().
class Xorshift64Star {
 public:
  explicit Xorshift64Star(std::uint64_t seed) : state_(splitmix64(seed)) {
    if (state_ == 0) {
      state_ = 0x9E3779B97F4A7C15ULL;
    }
  }

  std::uint64_t next() {
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 0x2545F4914F6CDD1DULL;
  }

  bool next_bit() { return (next() >> 63) != 0; }

  /// Uniform in [0, bound) by rejection; bound > 0.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) {
        return r % bound;
      }
    }
  }

  static constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
  }

 private:
  std::uint64_t state_;
};

}  // namespace branchtrace
