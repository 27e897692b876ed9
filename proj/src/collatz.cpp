#include "branchtrace/collatz.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <thread>

#include "branchtrace/errors.hpp"

namespace branchtrace {

std::string to_string(const BranchTrace& trace) {
  std::string out;
  out.reserve(trace.size());
  for (const BranchSymbol s : trace) {
    out.push_back(static_cast<char>(s));
  }
  return out;
}

BranchTrace parse_trace(std::string_view text) {
  BranchTrace out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    switch (text[i]) {
      case 'L': out.push_back(BranchSymbol::L); break;
      case 'R': out.push_back(BranchSymbol::R); break;
      default:
        throw DomainError("trace: invalid symbol at index " + std::to_string(i) +
                          " (expected L or R)");
    }
  }
  return out;
}

namespace collatz {
namespace {

using Int = Natural::Int;

// Largest odd n whose 3n+1 still fits in 64 bits.
constexpr std::uint64_t kSmallLimit = (std::numeric_limits<std::uint64_t>::max() - 1) / 3;

// Trajectory value that stays in a machine word until 3n+1 would overflow
// and drops back once halving brings it under 2^64 again.
class WalkValue {
 public:
  explicit WalkValue(const Natural& n) {
    if (auto w = n.to_u64()) {
      small_ = *w;
    } else {
      big_ = n.big();
      is_big_ = true;
    }
  }

  bool is_one() const { return !is_big_ && small_ == 1; }

  BranchSymbol advance() {
    if (!is_big_) {
      if ((small_ & 1U) == 0) {
        small_ >>= 1;
        return BranchSymbol::L;
      }
      if (small_ <= kSmallLimit) {
        small_ = 3 * small_ + 1;
        return BranchSymbol::R;
      }
      big_ = small_;
      is_big_ = true;
    }
    if (!boost::multiprecision::bit_test(big_, 0)) {
      big_ >>= 1;
      if (big_ <= std::numeric_limits<std::uint64_t>::max()) {
        small_ = static_cast<std::uint64_t>(big_);
        is_big_ = false;
      }
      return BranchSymbol::L;
    }
    big_ *= 3;
    big_ += 1;
    return BranchSymbol::R;
  }

  bool greater_than(const WalkValue& other) const {
    if (is_big_ != other.is_big_) {
      return is_big_;
    }
    return is_big_ ? big_ > other.big_ : small_ > other.small_;
  }

  Natural to_natural() const { return is_big_ ? Natural(big_) : Natural(small_); }

 private:
  std::uint64_t small_ = 0;
  bool is_big_ = false;
  Int big_;
};

struct WalkResult {
  std::uint64_t steps = 0;
  std::uint64_t l_count = 0;
  Natural peak;
  Natural terminal;
  StopReason reason = StopReason::ReachedOne;
};

template <class OnSymbol>
WalkResult walk(const Natural& n, const StopRule& rule, OnSymbol&& on_symbol) {
  if (n.is_zero()) {
    throw DomainError("collatz: input must be >= 1");
  }
  if (rule.max_steps == 0) {
    throw DomainError("collatz: max_steps must be >= 1");
  }

  const bool repeat_mode = rule.mode == StopMode::StopOnRepeat;
  std::set<Natural> visited;
  if (repeat_mode) {
    visited.insert(n);
  }

  WalkResult result;
  WalkValue current(n);
  WalkValue peak = current;
  for (;;) {
    if (!repeat_mode && current.is_one()) {
      result.reason = StopReason::ReachedOne;
      break;
    }
    if (result.steps == rule.max_steps) {
      result.reason = StopReason::StepCapExceeded;
      break;
    }
    const BranchSymbol s = current.advance();
    ++result.steps;
    if (s == BranchSymbol::L) {
      ++result.l_count;
    }
    on_symbol(s);
    if (current.greater_than(peak)) {
      peak = current;
    }
    if (repeat_mode && !visited.insert(current.to_natural()).second) {
      result.reason = StopReason::RepeatDetected;
      break;
    }
  }
  result.peak = peak.to_natural();
  result.terminal = current.to_natural();
  return result;
}

}  // namespace

std::string_view to_string(StopReason reason) {
  switch (reason) {
    case StopReason::ReachedOne: return "ReachedOne";
    case StopReason::RepeatDetected: return "RepeatDetected";
    case StopReason::StepCapExceeded: return "StepCapExceeded";
  }
  return "?";
}

std::uint64_t TraceRecord::l_count() const {
  return static_cast<std::uint64_t>(std::count(trace.begin(), trace.end(), BranchSymbol::L));
}

std::pair<Natural, BranchSymbol> step(const Natural& n) {
  if (n.is_zero()) {
    throw DomainError("collatz: input must be >= 1");
  }
  if (n.is_even()) {
    return {n / 2, BranchSymbol::L};
  }
  return {n * 3 + Natural(1), BranchSymbol::R};
}

TraceRecord trace(const Natural& n, const StopRule& rule) {
  TraceRecord rec;
  rec.input = n;
  WalkResult w = walk(n, rule, [&rec](BranchSymbol s) { rec.trace.push_back(s); });
  rec.steps = w.steps;
  rec.peak = std::move(w.peak);
  rec.terminal = std::move(w.terminal);
  rec.stop_reason = w.reason;
  return rec;
}

TraceSummary summarize(const Natural& n, const StopRule& rule) {
  WalkResult w = walk(n, rule, [](BranchSymbol) {});
  return TraceSummary{n, w.steps, w.l_count, std::move(w.peak), std::move(w.terminal), w.reason};
}

Natural decode(const BranchTrace& trace, const Natural& terminal) {
  if (terminal.is_zero()) {
    throw DomainError("decode: terminal must be >= 1");
  }
  Natural current = terminal;
  for (std::size_t i = trace.size(); i-- > 0;) {
    if (trace[i] == BranchSymbol::L) {
      current *= 2;
      continue;
    }
    // Predecessor p of an R step satisfies 3p + 1 == current with p odd.
    if (current.mod(3) != 1 || current.is_one()) {
      throw InconsistentTrace(i, "decode: step " + std::to_string(i) + " is R but " +
                                     current.to_string() + " has no odd predecessor");
    }
    Natural pred = (current - Natural(1)) / 3;
    if (pred.is_even()) {
      throw InconsistentTrace(i, "decode: step " + std::to_string(i) + " is R but predecessor " +
                                     pred.to_string() + " of " + current.to_string() +
                                     " is even");
    }
    current = std::move(pred);
  }
  return current;
}

SurveyReport survey(const Natural& lo, const Natural& hi, const StopRule& rule, unsigned workers) {
  if (lo.is_zero() || hi < lo) {
    throw DomainError("survey: require 1 <= lo <= hi");
  }
  constexpr std::uint64_t kRangeCap = std::uint64_t{1} << 24;
  const auto span = (hi - lo).to_u64();
  if (!span || *span >= kRangeCap) {
    throw ResourceError("survey: range exceeds 2^24 inputs");
  }
  const std::size_t count = static_cast<std::size_t>(*span) + 1;

  SurveyReport report;
  report.records.resize(count);

  if (workers == 0) {
    workers = std::max(1U, std::thread::hardware_concurrency());
  }
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, count));

  auto run_chunk = [&](std::size_t begin, std::size_t end) {
    Natural n = lo + Natural(begin);
    for (std::size_t i = begin; i < end; ++i) {
      report.records[i] = summarize(n, rule);
      n += Natural(1);
    }
  };
  if (workers <= 1) {
    run_chunk(0, count);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (count + workers - 1) / workers;
    for (std::size_t begin = 0; begin < count; begin += chunk) {
      pool.emplace_back(run_chunk, begin, std::min(count, begin + chunk));
    }
  }

  report.max_steps_at = lo;
  report.max_peak = lo;
  report.max_peak_at = lo;
  for (const TraceSummary& s : report.records) {
    if (s.steps > report.max_steps) {
      report.max_steps = s.steps;
      report.max_steps_at = s.input;
    }
    if (s.peak > report.max_peak) {
      report.max_peak = s.peak;
      report.max_peak_at = s.input;
    }
    if (s.stop_reason != StopReason::ReachedOne) {
      report.not_reaching_one.push_back(s.input);
    }
  }
  return report;
}

}  // namespace collatz
}  // namespace branchtrace
