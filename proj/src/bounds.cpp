#include "branchtrace/bounds.hpp"

#include <cmath>

#include "branchtrace/collatz.hpp"
#include "branchtrace/errors.hpp"

namespace branchtrace::bounds {

std::size_t description_bits(const Natural& n) {
  if (n.is_zero()) {
    throw DomainError("description_bits: n must be >= 1");
  }
  return n.bit_length();
}

Natural paths_at_depth(unsigned d) { return Natural::pow2(d); }

std::vector<CompositionLabel> composition_labels(unsigned d) {
  if (d > kMaxLabelDepth) {
    throw DomainError("composition_labels: depth above 20");
  }
  const std::size_t count = std::size_t{1} << d;
  std::vector<CompositionLabel> labels;
  labels.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    CompositionLabel label{std::string(d, 'f'), std::string(d, 'L')};
    for (unsigned j = 0; j < d; ++j) {
      // Bit (d - 1 - j) of i chooses position j; 0 -> f/L first.
      if ((i >> (d - 1 - j)) & 1U) {
        label.word[j] = 'g';
        label.branch[j] = 'R';
      }
    }
    labels.push_back(std::move(label));
  }
  return labels;
}

BoundReport bound_report(const Natural& lo, const Natural& hi, unsigned workers) {
  if (lo.is_zero() || hi < lo) {
    throw DomainError("bound_report: require 1 <= lo <= hi");
  }
  const auto span = (hi - lo).to_u64();
  if (!span || *span >= kRangeCap) {
    throw ResourceError("bound_report: range exceeds 2^24 inputs");
  }

  const collatz::SurveyReport survey = collatz::survey(lo, hi, {}, workers);

  BoundReport report;
  report.lo = lo;
  report.hi = hi;
  report.records.reserve(survey.records.size());
  for (std::size_t i = 0; i < survey.records.size(); ++i) {
    const collatz::TraceSummary& s = survey.records[i];
    if (s.stop_reason != collatz::StopReason::ReachedOne) {
      report.capped.push_back(s.input);
      continue;
    }
    InputRecord rec{i, description_bits(s.input), s.steps, s.l_count};
    report.total_b += rec.b_bits;
    report.total_r += rec.r_symbols;
    report.total_l += rec.l_count;
    if (rec.l_count < rec.b_bits - 1) {
      report.violations.push_back(s.input);
    }
    report.records.push_back(rec);
  }

  const double size = static_cast<double>(survey.records.size());
  report.log2_set_size = std::log2(size);
  if (!report.records.empty()) {
    report.mean_trace_len =
        static_cast<double>(report.total_r) / static_cast<double>(report.records.size());
  }
  if (report.total_r > 0) {
    const double pl = static_cast<double>(report.total_l) / static_cast<double>(report.total_r);
    const double pr = 1.0 - pl;
    for (const double p : {pl, pr}) {
      if (p > 0.0) {
        report.trace_entropy -= p * std::log2(p);
      }
    }
  }
  return report;
}

}  // namespace branchtrace::bounds
