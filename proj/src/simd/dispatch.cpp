#include <atomic>

#include "branchtrace/simd/kernels.hpp"

namespace branchtrace::simd {
namespace {

Isa probe() {
#if defined(BRANCHTRACE_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2")) {
    return Isa::Avx2;
  }
#endif
  return Isa::Scalar;
}

std::atomic<Isa>& active() {
  static std::atomic<Isa> isa{detected_isa()};
  return isa;
}

}  // namespace

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
  }
  return "?";
}

Isa detected_isa() {
  static const Isa isa = probe();
  return isa;
}

Isa active_isa() { return active().load(std::memory_order_relaxed); }

Isa set_active_isa(Isa isa) {
  if (isa == Isa::Avx2 && detected_isa() != Isa::Avx2) {
    isa = Isa::Scalar;
  }
  active().store(isa, std::memory_order_relaxed);
  return isa;
}

void rule30_step(std::span<const std::uint64_t> in, std::span<std::uint64_t> out,
                 std::uint64_t left_in, std::uint64_t right_in) {
#if defined(BRANCHTRACE_HAVE_AVX2)
  if (active_isa() == Isa::Avx2) {
    avx2::rule30_step(in, out, left_in, right_in);
    return;
  }
#endif
  scalar::rule30_step(in, out, left_in, right_in);
}

std::uint64_t hamming(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
#if defined(BRANCHTRACE_HAVE_AVX2)
  if (active_isa() == Isa::Avx2) {
    return avx2::hamming(a, b);
  }
#endif
  return scalar::hamming(a, b);
}

}  // namespace branchtrace::simd
