#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "branchtrace/natural.hpp"

namespace branchtrace {

/// One conditional decision of the 3n+1 map.
/// L is the even branch (n / 2), R the odd branch (3n + 1).
enum class BranchSymbol : char { L = 'L', R = 'R' };

using BranchTrace = std::vector<BranchSymbol>;

std::string to_string(const BranchTrace& trace);

/// Parses a string over {L, R}. Throws DomainError on any other character.
BranchTrace parse_trace(std::string_view text);

namespace collatz {

enum class StopMode { StopAtOne, StopOnRepeat };

inline constexpr std::uint64_t kDefaultMaxSteps = 100'000;

struct StopRule {
  StopMode mode = StopMode::StopAtOne;
  std::uint64_t max_steps = kDefaultMaxSteps;  // >= 1
};

enum class StopReason { ReachedOne, RepeatDetected, StepCapExceeded };

std::string_view to_string(StopReason reason);

struct TraceRecord {
  Natural input;
  BranchTrace trace;
  std::uint64_t steps = 0;
  Natural peak;
  Natural terminal;
  StopReason stop_reason = StopReason::ReachedOne;

  std::uint64_t l_count() const;
};

/// Trajectory summary without the branch string; what survey reports.
struct TraceSummary {
  Natural input;
  std::uint64_t steps = 0;
  std::uint64_t l_count = 0;
  Natural peak;
  Natural terminal;
  StopReason stop_reason = StopReason::ReachedOne;
};

struct SurveyReport {
  std::vector<TraceSummary> records;  // range order, one per input
  std::uint64_t max_steps = 0;
  Natural max_steps_at;
  Natural max_peak;
  Natural max_peak_at;
  std::vector<Natural> not_reaching_one;  // any stop_reason != ReachedOne
};

/// One application of the map. Throws DomainError for n == 0.
std::pair<Natural, BranchSymbol> step(const Natural& n);

/// Iterates `step` from n until the stop rule fires or max_steps is hit.
TraceRecord trace(const Natural& n, const StopRule& rule = {});

/// Same walk as `trace` but only counts symbols.
TraceSummary summarize(const Natural& n, const StopRule& rule = {});

/// Rebuilds the input from a trace and its terminal value by walking the
/// trace backwards. Throws InconsistentTrace when an R step has no odd
/// predecessor, DomainError when terminal == 0.
Natural decode(const BranchTrace& trace, const Natural& terminal);

/// Summaries for every n in [lo, hi], split across `workers` threads
/// (0 = hardware concurrency). Output order is range order regardless.
SurveyReport survey(const Natural& lo, const Natural& hi, const StopRule& rule = {},
                    unsigned workers = 0);

}  // namespace collatz
}  // namespace branchtrace
