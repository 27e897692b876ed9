#include <immintrin.h>

#include <bit>
#include <cstring>

#include "branchtrace/simd/kernels.hpp"

namespace branchtrace::simd::avx2 {

void rule30_step(std::span<const std::uint64_t> in, std::span<std::uint64_t> out,
                 std::uint64_t left_in, std::uint64_t right_in) {
  const std::size_t n = in.size();
  if (n < 6) {
    scalar::rule30_step(in, out, left_in, right_in);
    return;
  }
  const std::uint64_t* src = in.data();
  std::uint64_t* dst = out.data();

  // Word 0 and the tail need the carry-in bits; the interior reads its
  // neighbours with unaligned loads shifted by one word.
  auto edge = [&](std::size_t k) {
    const std::uint64_t prev = k == 0 ? (left_in << 63) : src[k - 1];
    const std::uint64_t next = k + 1 == n ? right_in : src[k + 1];
    const std::uint64_t center = src[k];
    dst[k] = ((center << 1) | (prev >> 63)) ^ (center | ((center >> 1) | (next << 63)));
  };

  edge(0);
  std::size_t k = 1;
  for (; k + 4 < n; k += 4) {
    const __m256i prev = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + k - 1));
    const __m256i center = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + k));
    const __m256i next = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + k + 1));
    const __m256i left =
        _mm256_or_si256(_mm256_slli_epi64(center, 1), _mm256_srli_epi64(prev, 63));
    const __m256i right =
        _mm256_or_si256(_mm256_srli_epi64(center, 1), _mm256_slli_epi64(next, 63));
    const __m256i cell = _mm256_xor_si256(left, _mm256_or_si256(center, right));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + k), cell);
  }
  for (; k < n; ++k) {
    edge(k);
  }
}

namespace {

// Nibble lookup popcount, summed per 64-bit lane with SAD.
inline __m256i popcount_bytes(__m256i v) {
  const __m256i lookup = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
                                          0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
  const __m256i low_mask = _mm256_set1_epi8(0x0f);
  const __m256i lo = _mm256_and_si256(v, low_mask);
  const __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low_mask);
  const __m256i counts =
      _mm256_add_epi8(_mm256_shuffle_epi8(lookup, lo), _mm256_shuffle_epi8(lookup, hi));
  return _mm256_sad_epu8(counts, _mm256_setzero_si256());
}

}  // namespace

std::uint64_t hamming(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
  const std::size_t n = a.size();
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a.data() + i));
    const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b.data() + i));
    acc = _mm256_add_epi64(acc, popcount_bytes(_mm256_xor_si256(va, vb)));
  }
  alignas(32) std::uint64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
  std::uint64_t total = lanes[0] + lanes[1] + lanes[2] + lanes[3];
  for (; i < n; ++i) {
    total += static_cast<std::uint64_t>(std::popcount(static_cast<unsigned>(a[i] ^ b[i])));
  }
  return total;
}

}  // namespace branchtrace::simd::avx2
