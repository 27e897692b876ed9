#include "branchtrace/randstat.hpp"

#include <array>
#include <cctype>
#include <cmath>
#include <numbers>

#include "branchtrace/errors.hpp"
#include "branchtrace/rng.hpp"
#include "branchtrace/simd/kernels.hpp"
#include "branchtrace/special_functions.hpp"

namespace branchtrace::randstat {
namespace {

void require_bits(BitView bits, std::size_t min_len, const char* test) {
  if (bits.size() < min_len) {
    throw DomainError(std::string(test) + ": needs at least " + std::to_string(min_len) +
                      " bits, got " + std::to_string(bits.size()));
  }
  for (const std::uint8_t b : bits) {
    if (b > 1) {
      throw DomainError(std::string(test) + ": stream values must be 0 or 1");
    }
  }
}

std::size_t count_ones(BitView bits) {
  std::size_t n = 0;
  for (const std::uint8_t b : bits) {
    n += b;
  }
  return n;
}

TestReport make_report(std::string name, double statistic, double p, double alpha) {
  return TestReport{std::move(name), statistic, p, alpha, p >= alpha, true};
}

template <class Range>
double entropy_of(const Range& symbols) {
  if (symbols.empty()) {
    throw DomainError("shannon_entropy: empty input");
  }
  std::array<std::size_t, 256> counts{};
  for (const auto s : symbols) {
    ++counts[static_cast<std::uint8_t>(s)];
  }
  const double n = static_cast<double>(symbols.size());
  double h = 0.0;
  for (const std::size_t c : counts) {
    if (c != 0) {
      const double p = static_cast<double>(c) / n;
      h -= p * std::log2(p);
    }
  }
  return h <= 0.0 ? 0.0 : h;
}

}  // namespace

std::vector<std::uint8_t> parse_bits(std::string_view text) {
  std::vector<std::uint8_t> bits;
  bits.reserve(text.size());
  for (const char c : text) {
    if (c == '0' || c == '1') {
      bits.push_back(static_cast<std::uint8_t>(c - '0'));
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      throw DomainError("bit text: unexpected character '" + std::string(1, c) + "'");
    }
  }
  return bits;
}

double shannon_entropy(std::span<const std::uint8_t> symbols) { return entropy_of(symbols); }
double shannon_entropy(std::string_view symbols) { return entropy_of(symbols); }

TestReport monobit(BitView bits, double alpha) {
  require_bits(bits, 100, "monobit");
  const double n = static_cast<double>(bits.size());
  const double sum = 2.0 * static_cast<double>(count_ones(bits)) - n;
  const double s_obs = std::fabs(sum) / std::sqrt(n);
  return make_report("monobit", s_obs, special::erfc(s_obs / std::numbers::sqrt2), alpha);
}

TestReport runs_test(BitView bits, double alpha) {
  require_bits(bits, 100, "runs");
  const double n = static_cast<double>(bits.size());
  const double pi = static_cast<double>(count_ones(bits)) / n;

  std::size_t runs = 1;
  for (std::size_t i = 1; i < bits.size(); ++i) {
    runs += bits[i] != bits[i - 1] ? 1 : 0;
  }
  const double v = static_cast<double>(runs);

  if (std::fabs(pi - 0.5) >= 2.0 / std::sqrt(n)) {
    TestReport r = make_report("runs", v, 0.0, alpha);
    r.passed = false;
    r.prerequisite_met = false;
    return r;
  }
  const double spread = pi * (1.0 - pi);
  const double p =
      special::erfc(std::fabs(v - 2.0 * n * spread) / (2.0 * std::sqrt(2.0 * n) * spread));
  return make_report("runs", v, p, alpha);
}

TestReport serial_test(BitView bits, unsigned k, double alpha) {
  if (k < 2 || k > 4) {
    throw DomainError("serial: k must be 2, 3 or 4");
  }
  const std::size_t patterns = std::size_t{1} << k;
  require_bits(bits, 100 * patterns, "serial");

  std::array<std::size_t, 16> counts{};
  const std::size_t blocks = bits.size() / k;
  for (std::size_t b = 0; b < blocks; ++b) {
    unsigned value = 0;
    for (unsigned j = 0; j < k; ++j) {
      value = (value << 1) | bits[b * k + j];
    }
    ++counts[value];
  }
  const double expected = static_cast<double>(blocks) / static_cast<double>(patterns);
  double chi2 = 0.0;
  for (std::size_t v = 0; v < patterns; ++v) {
    const double d = static_cast<double>(counts[v]) - expected;
    chi2 += d * d / expected;
  }
  const double dof = static_cast<double>(patterns - 1);
  const double p = special::regularized_gamma_q(dof / 2.0, chi2 / 2.0);
  return make_report("serial", chi2, p, alpha);
}

TestReport entropy_test(BitView bits, double alpha) {
  require_bits(bits, 1, "entropy");
  const double h = shannon_entropy(bits);
  const double n = static_cast<double>(bits.size());
  const double g = std::max(0.0, 2.0 * n * std::numbers::ln2 * (1.0 - h));
  return make_report("entropy", h, special::regularized_gamma_q(0.5, g / 2.0), alpha);
}

std::vector<TestReport> battery(BitView bits, double alpha) {
  return {monobit(bits, alpha), runs_test(bits, alpha), serial_test(bits, 2, alpha)};
}

AvalancheResult avalanche(const ByteFunction& fn, std::size_t input_len, std::size_t trials,
                          std::uint64_t seed) {
  if (trials < 100) {
    throw DomainError("avalanche: needs at least 100 trials");
  }
  if (input_len == 0) {
    throw DomainError("avalanche: input_len must be >= 1");
  }
  Xorshift64Star rng(seed);
  AvalancheResult result;
  result.fractions.reserve(trials);
  std::vector<std::uint8_t> input(input_len);
  double total = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    for (std::uint8_t& byte : input) {
      byte = static_cast<std::uint8_t>(rng.next() >> 56);
    }
    const std::vector<std::uint8_t> base = fn(input);
    const std::uint64_t bit = rng.below(input_len * 8);
    input[bit / 8] ^= static_cast<std::uint8_t>(1U << (bit % 8));
    const std::vector<std::uint8_t> flipped = fn(input);
    if (base.empty() || base.size() != flipped.size()) {
      throw DomainError("avalanche: function output must be non-empty and fixed-length");
    }
    const double fraction = static_cast<double>(simd::hamming(base, flipped)) /
                            static_cast<double>(base.size() * 8);
    result.fractions.push_back(fraction);
    total += fraction;
  }
  result.mean = total / static_cast<double>(trials);
  return result;
}

}  // namespace branchtrace::randstat
