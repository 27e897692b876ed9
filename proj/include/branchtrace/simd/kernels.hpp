#pragma once

// Data-parallel inner loops. Each kernel has a scalar reference version that
// is always compiled and, on x86-64, an AVX2 version that is selected at
// runtime after a cpuid check. Tests assert both produce identical output.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace branchtrace::simd {

enum class Isa { Scalar, Avx2 };

std::string_view to_string(Isa isa);

/// Best instruction set available on this CPU and compiled into the library.
Isa detected_isa();

/// ISA used by the dispatching entry points below. Defaults to detected_isa().
Isa active_isa();

/// Forces the dispatch target; requesting an unavailable ISA falls back to
/// Scalar. Returns the ISA actually selected.
Isa set_active_isa(Isa isa);

// Rule 30 over a packed bit string: bit i of the string is bit (i % 64) of
// word i / 64. For every cell i in [0, 64 * in.size()):
//     out[i] = cell(i - 1) ^ (cell(i) | cell(i + 1))
// where cell(-1) = left_in and cell(64 * in.size()) = right_in (each 0 or 1).
// `out` must have the same size as `in` and must not alias it.
using Rule30StepFn = void (*)(std::span<const std::uint64_t> in, std::span<std::uint64_t> out,
                              std::uint64_t left_in, std::uint64_t right_in);

// Number of differing bits between two equally sized byte ranges.
using HammingFn = std::uint64_t (*)(std::span<const std::uint8_t> a,
                                    std::span<const std::uint8_t> b);

namespace scalar {
void rule30_step(std::span<const std::uint64_t> in, std::span<std::uint64_t> out,
                 std::uint64_t left_in, std::uint64_t right_in);
std::uint64_t hamming(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);
}  // namespace scalar

#if defined(BRANCHTRACE_HAVE_AVX2)
namespace avx2 {
void rule30_step(std::span<const std::uint64_t> in, std::span<std::uint64_t> out,
                 std::uint64_t left_in, std::uint64_t right_in);
std::uint64_t hamming(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);
}  // namespace avx2
#endif

/// Dispatching entry points.
void rule30_step(std::span<const std::uint64_t> in, std::span<std::uint64_t> out,
                 std::uint64_t left_in, std::uint64_t right_in);
std::uint64_t hamming(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);

}  // namespace branchtrace::simd
