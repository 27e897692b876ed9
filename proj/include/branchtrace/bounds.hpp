#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "branchtrace/natural.hpp"

namespace branchtrace::bounds {

/// Maximum number of inputs in one bound_report.
inline constexpr std::uint64_t kRangeCap = std::uint64_t{1} << 24;
inline constexpr unsigned kMaxLabelDepth = 20;

/// floor(log2 n) + 1. Throws DomainError for n == 0.
std::size_t description_bits(const Natural& n);

/// 2^d: distinct f/g composition orders after d binary branchings.
Natural paths_at_depth(unsigned d);

struct CompositionLabel {
  std::string word;    // over {f, g}
  std::string branch;  // over {L, R}, f <-> L, g <-> R
};

/// All 2^d words, L-first lexicographic order. Throws DomainError for d > 20.
std::vector<CompositionLabel> composition_labels(unsigned d);

struct InputRecord {
  std::uint64_t offset = 0;  // n = lo + offset
  std::uint64_t b_bits = 0;
  std::uint64_t r_symbols = 0;
  std::uint64_t l_count = 0;
};

/// Per-input description length b(n) against trace length r(n) over [lo, hi].
struct BoundReport {
  Natural lo;
  Natural hi;
  std::vector<InputRecord> records;  // inputs that reached 1, range order
  std::uint64_t total_b = 0;         // B
  std::uint64_t total_r = 0;         // R
  std::uint64_t total_l = 0;
  std::vector<Natural> violations;   // l_count < floor(log2 n)
  std::vector<Natural> capped;       // hit the step cap; not in aggregates
  double mean_trace_len = 0.0;
  double log2_set_size = 0.0;
  double trace_entropy = 0.0;        // bits per symbol of the concatenated traces

  Natural input(const InputRecord& rec) const { return lo + Natural(rec.offset); }
};

/// Traces every n in [lo, hi] (StopAtOne, default step cap). `workers` as in
/// collatz::survey. Throws DomainError on an invalid range and ResourceError
/// for more than kRangeCap inputs.
BoundReport bound_report(const Natural& lo, const Natural& hi, unsigned workers = 0);

}  // namespace branchtrace::bounds
