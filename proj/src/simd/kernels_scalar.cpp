#include <bit>

#include "branchtrace/simd/kernels.hpp"

namespace branchtrace::simd::scalar {

void rule30_step(std::span<const std::uint64_t> in, std::span<std::uint64_t> out,
                 std::uint64_t left_in, std::uint64_t right_in) {
  const std::size_t n = in.size();
  for (std::size_t k = 0; k < n; ++k) {
    const std::uint64_t prev = k == 0 ? (left_in << 63) : in[k - 1];
    const std::uint64_t next = k + 1 == n ? right_in : in[k + 1];
    const std::uint64_t center = in[k];
    const std::uint64_t left = (center << 1) | (prev >> 63);
    const std::uint64_t right = (center >> 1) | (next << 63);
    out[k] = left ^ (center | right);
  }
}

std::uint64_t hamming(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    total += static_cast<std::uint64_t>(std::popcount(static_cast<unsigned>(a[i] ^ b[i])));
  }
  return total;
}

}  // namespace branchtrace::simd::scalar
