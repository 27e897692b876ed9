#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "branchtrace/bounds.hpp"
#include "branchtrace/collatz.hpp"
#include "branchtrace/dyncompose.hpp"
#include "branchtrace/errors.hpp"
#include "branchtrace/hex.hpp"
#include "branchtrace/randstat.hpp"
#include "branchtrace/rule30.hpp"
#include "branchtrace/simd/kernels.hpp"

namespace branchtrace::cli {
namespace {

using json = nlohmann::json;

/// Raised when an output file cannot be written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input paths that cannot be read are reported as usage errors (exit 2).
std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw DomainError("cannot read input file '" + path + "'");
  }
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

// Writes to `path`, or to `out` when path is empty.
void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) {
    throw IoError("cannot open output file '" + path + "'");
  }
  file << text;
  file.close();
  if (!file) {
    throw IoError("failed writing output file '" + path + "'");
  }
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

collatz::StopRule make_rule(const std::string& stop, std::uint64_t max_steps) {
  if (max_steps == 0) {
    throw DomainError("--max-steps must be >= 1");
  }
  return collatz::StopRule{
      stop == "repeat" ? collatz::StopMode::StopOnRepeat : collatz::StopMode::StopAtOne,
      max_steps};
}

// ---------------------------------------------------------------------------

struct TraceArgs {
  std::string n;
  std::string stop = "one";
  std::uint64_t max_steps = collatz::kDefaultMaxSteps;
  std::string format = "json";
};

int cmd_trace(const TraceArgs& a, std::ostream& out) {
  const collatz::TraceRecord rec =
      collatz::trace(Natural::parse(a.n), make_rule(a.stop, a.max_steps));
  if (a.format == "text") {
    out << to_string(rec.trace) << "\n";
    return kSuccess;
  }
  const json doc = {{"n", rec.input.to_string()},
                    {"trace", to_string(rec.trace)},
                    {"steps", rec.steps},
                    {"peak", rec.peak.to_string()},
                    {"terminal", rec.terminal.to_string()},
                    {"stop_reason", std::string(collatz::to_string(rec.stop_reason))}};
  out << dump(doc);
  return kSuccess;
}

struct InvertArgs {
  std::string trace;
  std::string terminal = "1";
};

int cmd_invert(const InvertArgs& a, std::ostream& out) {
  out << collatz::decode(parse_trace(a.trace), Natural::parse(a.terminal)).to_string() << "\n";
  return kSuccess;
}

struct RangeArgs {
  std::string lo;
  std::string hi;
  std::string format;
  std::string out_path;
  std::string stop = "one";
  std::uint64_t max_steps = collatz::kDefaultMaxSteps;
};

int cmd_survey(const RangeArgs& a, unsigned threads, std::ostream& out) {
  const collatz::SurveyReport report = collatz::survey(
      Natural::parse(a.lo), Natural::parse(a.hi), make_rule(a.stop, a.max_steps), threads);
  std::string text;
  if (a.format == "csv") {
    std::ostringstream csv;
    csv << "n,steps,peak,l_count,stop_reason\n";
    for (const collatz::TraceSummary& s : report.records) {
      csv << s.input.to_string() << ',' << s.steps << ',' << s.peak.to_string() << ','
          << s.l_count << ',' << collatz::to_string(s.stop_reason) << '\n';
    }
    text = csv.str();
  } else {
    json records = json::array();
    for (const collatz::TraceSummary& s : report.records) {
      records.push_back({{"n", s.input.to_string()},
                         {"steps", s.steps},
                         {"peak", s.peak.to_string()},
                         {"l_count", s.l_count},
                         {"stop_reason", std::string(collatz::to_string(s.stop_reason))}});
    }
    json missing = json::array();
    for (const Natural& n : report.not_reaching_one) {
      missing.push_back(n.to_string());
    }
    text = dump({{"lo", a.lo},
                 {"hi", a.hi},
                 {"max_steps", report.max_steps},
                 {"max_steps_at", report.max_steps_at.to_string()},
                 {"max_peak", report.max_peak.to_string()},
                 {"max_peak_at", report.max_peak_at.to_string()},
                 {"not_reaching_one", missing},
                 {"records", records}});
  }
  emit(a.out_path, text, out);
  return kSuccess;
}

int cmd_bound(const RangeArgs& a, unsigned threads, std::ostream& out) {
  const bounds::BoundReport report =
      bounds::bound_report(Natural::parse(a.lo), Natural::parse(a.hi), threads);
  std::string text;
  if (a.format == "csv") {
    std::ostringstream csv;
    csv << "n,b_bits,r_symbols,l_count\n";
    for (const bounds::InputRecord& r : report.records) {
      csv << report.input(r).to_string() << ',' << r.b_bits << ',' << r.r_symbols << ','
          << r.l_count << '\n';
    }
    text = csv.str();
  } else {
    json records = json::array();
    for (const bounds::InputRecord& r : report.records) {
      records.push_back({{"n", report.input(r).to_string()},
                         {"b_bits", r.b_bits},
                         {"r_symbols", r.r_symbols},
                         {"l_count", r.l_count}});
    }
    auto naturals = [](const std::vector<Natural>& v) {
      json arr = json::array();
      for (const Natural& n : v) {
        arr.push_back(n.to_string());
      }
      return arr;
    };
    text = dump({{"lo", report.lo.to_string()},
                 {"hi", report.hi.to_string()},
                 {"count", report.records.size()},
                 {"B", report.total_b},
                 {"R", report.total_r},
                 {"mean_trace_len", report.mean_trace_len},
                 {"log2_set_size", report.log2_set_size},
                 {"trace_entropy", report.trace_entropy},
                 {"violations", naturals(report.violations)},
                 {"capped", naturals(report.capped)},
                 {"records", records}});
  }
  emit(a.out_path, text, out);
  return kSuccess;
}

// ---------------------------------------------------------------------------

struct Rule30Args {
  std::string init = "single";
  std::optional<std::size_t> width;
  std::uint64_t seed = 0;
  std::size_t steps = 64;
  std::optional<std::string> mode;
  std::string pbm_path;
  std::string center_path;
};

// P1 bitmap: ExpandZero rows are centred on the final (widest) row.
std::string to_pbm(const rule30::Grid& grid) {
  const std::size_t width = grid.rows.back().width();
  std::string text = "P1\n" + std::to_string(width) + " " + std::to_string(grid.rows.size()) + "\n";
  for (const rule30::Row& row : grid.rows) {
    const std::size_t offset = (width - row.width()) / 2;
    for (std::size_t x = 0; x < width; ++x) {
      if (x != 0) {
        text.push_back(' ');
      }
      const bool on = x >= offset && x < offset + row.width() && row.get(x - offset);
      text.push_back(on ? '1' : '0');
    }
    text.push_back('\n');
  }
  return text;
}

int cmd_rule30(const Rule30Args& a, std::ostream& out) {
  const bool single = a.init == "single";
  const std::string mode_name = a.mode.value_or(single ? "expand" : "wrap");
  const rule30::BoundaryMode mode =
      mode_name == "wrap" ? rule30::BoundaryMode::Wrap : rule30::BoundaryMode::ExpandZero;

  if (!a.width && (!single || mode == rule30::BoundaryMode::Wrap)) {
    throw DomainError(single ? "rule30: --mode wrap needs --width" : "rule30: --init random needs --width");
  }
  const std::size_t width = a.width.value_or(1);
  if (width == 0 || width > rule30::kMaxWidth) {
    throw DomainError("rule30: --width must be in [1, 2^20]");
  }
  const rule30::Row initial = single ? rule30::Row::single(width) : rule30::random_row(width, a.seed);

  if (!a.center_path.empty()) {
    std::string text;
    for (const std::uint8_t bit : rule30::center_column(initial, a.steps, mode)) {
      text.push_back(bit ? '1' : '0');
      text.push_back('\n');
    }
    emit(a.center_path, text, out);
  }
  if (!a.pbm_path.empty() || a.center_path.empty()) {
    emit(a.pbm_path, to_pbm(rule30::evolve(initial, a.steps, mode)), out);
  }
  return kSuccess;
}

// ---------------------------------------------------------------------------

struct TestArgs {
  std::string name;
  std::string in_path;
  double alpha = randstat::kDefaultAlpha;
  unsigned k = 2;
};

int cmd_test(const TestArgs& a, std::ostream& out) {
  if (!(a.alpha > 0.0 && a.alpha < 1.0)) {
    throw DomainError("--alpha must lie in (0, 1)");
  }
  const std::vector<std::uint8_t> bits = randstat::parse_bits(read_file(a.in_path));
  randstat::TestReport r;
  if (a.name == "monobit") {
    r = randstat::monobit(bits, a.alpha);
  } else if (a.name == "runs") {
    r = randstat::runs_test(bits, a.alpha);
  } else if (a.name == "serial") {
    r = randstat::serial_test(bits, a.k, a.alpha);
  } else {
    r = randstat::entropy_test(bits, a.alpha);
  }
  json doc = {{"test", r.test_name},
              {"statistic", r.statistic},
              {"p_value", r.p_value},
              {"alpha", r.alpha},
              {"passed", r.passed}};
  if (a.name == "runs") {
    doc["prerequisite_met"] = r.prerequisite_met;
  }
  out << dump(doc);
  return r.passed ? kSuccess : kStatisticalFail;
}

struct DigestArgs {
  std::string key_hex;
  std::string in_path;
  bool emit_trace = false;
};

int cmd_digest(const DigestArgs& a, std::ostream& out) {
  if (a.key_hex.size() != 2 * dyncompose::kKeyBytes) {
    throw KeyLengthError("--key must be 64 hex characters, got " +
                         std::to_string(a.key_hex.size()));
  }
  const std::vector<std::uint8_t> key = from_hex(a.key_hex);
  const std::string message = read_file(a.in_path);
  const dyncompose::DigestResult result = dyncompose::digest(
      key, std::span(reinterpret_cast<const std::uint8_t*>(message.data()), message.size()));
  out << to_hex(result.bytes) << "\n";
  if (a.emit_trace) {
    out << to_string(result.trace) << "\n";
  }
  return kSuccess;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Branch-trace experiments: Collatz traces, Rule 30, randomness tests, "
               "and a state-selected composition digest."};
  app.name("branchtrace");
  app.require_subcommand(1);

  std::string isa = "auto";
  unsigned threads = 0;
  app.add_option("--isa", isa, "Kernel instruction set")
      ->check(CLI::IsMember({"auto", "scalar", "avx2"}));
  app.add_option("--threads", threads, "Worker threads for survey/bound (0 = all cores)");

  TraceArgs trace_args;
  auto* trace_cmd = app.add_subcommand("trace", "Trace one Collatz trajectory as an L/R string");
  trace_cmd->add_option("n", trace_args.n, "Starting value (positive decimal)")->required();
  trace_cmd->add_option("--stop", trace_args.stop)->check(CLI::IsMember({"one", "repeat"}));
  trace_cmd->add_option("--max-steps", trace_args.max_steps);
  trace_cmd->add_option("--format", trace_args.format)->check(CLI::IsMember({"json", "text"}));

  InvertArgs invert_args;
  auto* invert_cmd = app.add_subcommand("invert", "Rebuild the input from a trace and terminal");
  invert_cmd->add_option("--trace", invert_args.trace, "String over {L,R}")->required();
  invert_cmd->add_option("--terminal", invert_args.terminal);

  RangeArgs survey_args;
  survey_args.format = "csv";
  auto* survey_cmd = app.add_subcommand("survey", "Summarize every trajectory in [lo, hi]");
  survey_cmd->add_option("lo", survey_args.lo)->required();
  survey_cmd->add_option("hi", survey_args.hi)->required();
  survey_cmd->add_option("--format", survey_args.format)->check(CLI::IsMember({"csv", "json"}));
  survey_cmd->add_option("--out", survey_args.out_path);
  survey_cmd->add_option("--stop", survey_args.stop)->check(CLI::IsMember({"one", "repeat"}));
  survey_cmd->add_option("--max-steps", survey_args.max_steps);

  Rule30Args rule30_args;
  auto* rule30_cmd = app.add_subcommand("rule30", "Evolve Rule 30 and export PBM / centre column");
  rule30_cmd->add_option("--init", rule30_args.init)->check(CLI::IsMember({"single", "random"}));
  rule30_cmd->add_option("--width", rule30_args.width);
  rule30_cmd->add_option("--seed", rule30_args.seed);
  rule30_cmd->add_option("--steps", rule30_args.steps);
  rule30_cmd->add_option("--mode", rule30_args.mode)->check(CLI::IsMember({"wrap", "expand"}));
  rule30_cmd->add_option("--pbm", rule30_args.pbm_path);
  rule30_cmd->add_option("--center", rule30_args.center_path);

  TestArgs test_args;
  auto* test_cmd = app.add_subcommand("test", "Run one randomness test on a 0/1 text file");
  test_cmd->add_option("name", test_args.name)
      ->required()
      ->check(CLI::IsMember({"monobit", "runs", "serial", "entropy"}));
  test_cmd->add_option("--in", test_args.in_path)->required();
  test_cmd->add_option("--alpha", test_args.alpha);
  test_cmd->add_option("--k", test_args.k)->check(CLI::Range(2U, 4U));

  RangeArgs bound_args;
  bound_args.format = "json";
  auto* bound_cmd = app.add_subcommand("bound", "Compare input bit length with trace length");
  bound_cmd->add_option("lo", bound_args.lo)->required();
  bound_cmd->add_option("hi", bound_args.hi)->required();
  bound_cmd->add_option("--format", bound_args.format)->check(CLI::IsMember({"json", "csv"}));
  bound_cmd->add_option("--out", bound_args.out_path);

  DigestArgs digest_args;
  auto* digest_cmd = app.add_subcommand("digest", "Toy state-selected digest (not cryptographic)");
  digest_cmd->add_option("--key", digest_args.key_hex, "64 hex characters")->required();
  digest_cmd->add_option("--in", digest_args.in_path)->required();
  digest_cmd->add_flag("--emit-trace", digest_args.emit_trace);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  try {
    if (isa != "auto") {
      simd::set_active_isa(isa == "avx2" ? simd::Isa::Avx2 : simd::Isa::Scalar);
    }
    if (trace_cmd->parsed()) return cmd_trace(trace_args, out);
    if (invert_cmd->parsed()) return cmd_invert(invert_args, out);
    if (survey_cmd->parsed()) return cmd_survey(survey_args, threads, out);
    if (rule30_cmd->parsed()) return cmd_rule30(rule30_args, out);
    if (test_cmd->parsed()) return cmd_test(test_args, out);
    if (bound_cmd->parsed()) return cmd_bound(bound_args, threads, out);
    if (digest_cmd->parsed()) return cmd_digest(digest_args, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const InconsistentTrace& e) {
    err << "error: inconsistent trace at step " << e.step_index() << ": " << e.what() << "\n";
    return kUsageError;
  } catch (const std::invalid_argument& e) {  // DomainError, key/block length errors
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::length_error& e) {  // ResourceError
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace branchtrace::cli
