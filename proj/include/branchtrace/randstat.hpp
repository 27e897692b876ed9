#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace branchtrace::randstat {

/// A bit stream is a sequence of bytes each holding 0 or 1.
using BitView = std::span<const std::uint8_t>;

inline constexpr double kDefaultAlpha = 0.01;

struct TestReport {
  std::string test_name;
  double statistic = 0.0;
  double p_value = 0.0;
  double alpha = kDefaultAlpha;
  bool passed = false;  // p_value >= alpha (and any prerequisite met)
  bool prerequisite_met = true;
};

/// Parses '0'/'1' characters, skipping whitespace. Throws DomainError on
/// anything else.
std::vector<std::uint8_t> parse_bits(std::string_view text);

/// Empirical Shannon entropy in bits per symbol; symbols are byte values.
/// Throws DomainError on empty input.
double shannon_entropy(std::span<const std::uint8_t> symbols);
double shannon_entropy(std::string_view symbols);

/// Frequency (monobit) test. Needs >= 100 bits.
TestReport monobit(BitView bits, double alpha = kDefaultAlpha);

/// Runs test. Needs >= 100 bits. When the ones fraction is too far from 1/2
/// the test is not applicable and reports p = 0 with prerequisite_met false.
TestReport runs_test(BitView bits, double alpha = kDefaultAlpha);

/// Chi-square over non-overlapping k-bit blocks, k in {2, 3, 4}, with
/// 2^k - 1 degrees of freedom. Needs >= 100 * 2^k bits.
TestReport serial_test(BitView bits, unsigned k, double alpha = kDefaultAlpha);

/// Entropy as a test: statistic is the binary Shannon entropy H, and the
/// p-value comes from the likelihood-ratio (G) test against a fair coin,
/// G = 2 n ln2 (1 - H) with one degree of freedom.
TestReport entropy_test(BitView bits, double alpha = kDefaultAlpha);

/// monobit, runs, serial(k = 2), in that order.
std::vector<TestReport> battery(BitView bits, double alpha = kDefaultAlpha);

using ByteFunction = std::function<std::vector<std::uint8_t>(std::span<const std::uint8_t>)>;

struct AvalancheResult {
  double mean = 0.0;
  std::vector<double> fractions;  // one per trial
};

/// Per trial: draw input_len random bytes, flip one uniformly chosen bit, and
/// record Hamming(fn(x), fn(x')) / output bits. Needs trials >= 100.
AvalancheResult avalanche(const ByteFunction& fn, std::size_t input_len, std::size_t trials,
                          std::uint64_t seed);

}  // namespace branchtrace::randstat
