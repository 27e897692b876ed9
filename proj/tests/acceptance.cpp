// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails. Criteria 9 and 10 drive the built CLI as a subprocess.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "branchtrace/bounds.hpp"
#include "branchtrace/collatz.hpp"
#include "branchtrace/dyncompose.hpp"
#include "branchtrace/randstat.hpp"
#include "branchtrace/rng.hpp"
#include "branchtrace/rule30.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using namespace branchtrace;

namespace {

struct Outcome {
  bool passed;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  std::function<Outcome()> check;
};

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

// ---------------------------------------------------------------------------

Outcome convergence_slice() {
  const auto start = std::chrono::steady_clock::now();
  const auto report = collatz::survey(Natural(1), Natural(1'000'000));
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool ok = report.records.size() == 1'000'000 && report.not_reaching_one.empty() &&
                  report.max_steps <= collatz::kDefaultMaxSteps && seconds < 60.0;
  return {ok, "non-ReachedOne=" + std::to_string(report.not_reaching_one.size()) +
                  " max_steps=" + std::to_string(report.max_steps) + " at n=" +
                  report.max_steps_at.to_string() + " time=" + fmt(seconds) + "s (limit 60s)"};
}

Outcome codec_roundtrip() {
  std::size_t failures = 0;
  for (std::uint64_t n = 1; n <= 100'000; ++n) {
    const auto rec = collatz::trace(Natural(n));
    if (rec.stop_reason != collatz::StopReason::ReachedOne ||
        collatz::decode(rec.trace, rec.terminal) != Natural(n) ||
        collatz::decode(rec.trace, Natural(1)) != Natural(n)) {
      ++failures;
    }
  }
  std::set<std::pair<std::string, std::string>> seen;
  for (std::uint64_t n = 1; n <= 10'000; ++n) {
    const auto rec = collatz::trace(Natural(n));
    seen.emplace(to_string(rec.trace), rec.terminal.to_string());
  }
  const bool ok = failures == 0 && seen.size() == 10'000;
  return {ok, "roundtrip failures=" + std::to_string(failures) + " over [1,1e5]; distinct pairs=" +
                  std::to_string(seen.size()) + "/10000"};
}

Outcome oracle_spot_checks() {
  const auto rec = collatz::trace(Natural(27));
  const auto ref = oracle::collatz_to_one(27);
  const bool t27 = rec.steps == 111 && rec.peak == Natural(9232) &&
                   ref.symbols.size() == 111 && ref.peak == 9232 &&
                   to_string(rec.trace) == ref.symbols;

  std::size_t ref_max = 0;
  std::uint64_t ref_arg = 0;
  for (std::uint64_t n = 1; n <= 10; ++n) {
    const std::size_t len = oracle::collatz_to_one(n).symbols.size();
    if (len > ref_max) {
      ref_max = len;
      ref_arg = n;
    }
  }
  const auto s = collatz::survey(Natural(1), Natural(10));
  const bool s10 = s.max_steps == 19 && s.max_steps_at == Natural(9) && ref_max == 19 &&
                   ref_arg == 9;
  return {t27 && s10, "trace(27): steps=" + std::to_string(rec.steps) + " peak=" +
                          rec.peak.to_string() + "; survey(1,10): max=" +
                          std::to_string(s.max_steps) + " at n=" + s.max_steps_at.to_string() +
                          " (oracle " + std::to_string(ref_max) + " at " +
                          std::to_string(ref_arg) + ")"};
}

Outcome bound_property() {
  std::size_t bad = 0;
  for (std::uint64_t n = 2; n <= 100'000; ++n) {
    const auto s = collatz::summarize(Natural(n));
    const std::uint64_t floor_log2 = Natural(n).bit_length() - 1;
    if (s.stop_reason != collatz::StopReason::ReachedOne || s.l_count < floor_log2) {
      ++bad;
    }
  }
  const auto rep = bounds::bound_report(Natural(1), Natural(65536));
  const bool ok = bad == 0 && rep.violations.empty() && rep.mean_trace_len > 16.0 &&
                  rep.log2_set_size == 16.0;
  return {ok, "l_count < floor(log2 n) in [2,1e5]: " + std::to_string(bad) +
                  "; bound_report(1,2^16): violations=" + std::to_string(rep.violations.size()) +
                  " mean_trace_len=" + fmt(rep.mean_trace_len) + " (> 16), B=" +
                  std::to_string(rep.total_b) + " R=" + std::to_string(rep.total_r)};
}

Outcome rule30_correctness() {
  int table_ok = 0;
  for (int idx = 0; idx < 8; ++idx) {
    const int l = (idx >> 2) & 1, c = (idx >> 1) & 1, r = idx & 1;
    const int expected = oracle::english_rule(l, c, r);
    const rule30::Row row = rule30::Row::from_string(oracle::cells_to_string({l, c, r}));
    const bool wrap = rule30::step_row(row, rule30::BoundaryMode::Wrap).get(1) == (expected == 1);
    const bool expand =
        rule30::step_row(row, rule30::BoundaryMode::ExpandZero).get(2) == (expected == 1);
    table_ok += (wrap && expand && ((30 >> idx) & 1) == expected) ? 1 : 0;
  }

  const auto grid = rule30::evolve(rule30::Row::single(), 64, rule30::BoundaryMode::ExpandZero);
  std::vector<int> ref = {1};
  int gens_ok = 0;
  for (std::size_t t = 1; t < grid.rows.size(); ++t) {
    ref = oracle::ca_step(ref, false);
    gens_ok += grid.rows[t].to_string() == oracle::cells_to_string(ref) ? 1 : 0;
  }
  const auto center =
      rule30::center_column(rule30::Row::single(), 3, rule30::BoundaryMode::ExpandZero);
  const bool center_ok = center == std::vector<std::uint8_t>{1, 1, 0, 1};
  return {table_ok == 8 && gens_ok == 64 && center_ok,
          "truth table " + std::to_string(table_ok) + "/8; generations matching oracle " +
              std::to_string(gens_ok) + "/64; first centre bits " +
              (center_ok ? "1,1,0,1" : "MISMATCH")};
}

Outcome entropy_indifference() {
  constexpr std::size_t kSteps = 4096;
  const auto low = rule30::center_column(rule30::Row::single(), kSteps,
                                         rule30::BoundaryMode::ExpandZero);
  const auto high = rule30::center_column(rule30::random_row(256, 42), kSteps,
                                          rule30::BoundaryMode::Wrap);
  const auto a = randstat::battery(low, 0.01);
  const auto b = randstat::battery(high, 0.01);
  bool all_pass = true;
  bool same = true;
  std::string detail;
  for (std::size_t i = 0; i < a.size(); ++i) {
    all_pass = all_pass && a[i].passed && b[i].passed;
    same = same && a[i].passed == b[i].passed;
    detail += a[i].test_name + " p=" + fmt(a[i].p_value) + "/" + fmt(b[i].p_value) + "; ";
  }
  const double ha = randstat::shannon_entropy(low);
  const double hb = randstat::shannon_entropy(high);
  detail += "H=" + fmt(ha) + "/" + fmt(hb) + " (single/random)";
  return {all_pass && same && ha >= 0.99 && hb >= 0.99, detail};
}

Outcome battery_calibration() {
  constexpr int kStreams = 200;
  int passes[3] = {0, 0, 0};
  for (int s = 0; s < kStreams; ++s) {
    Xorshift64Star rng(static_cast<std::uint64_t>(s));
    std::vector<std::uint8_t> bits(4096);
    for (auto& b : bits) b = rng.next_bit() ? 1 : 0;
    const auto reports = randstat::battery(bits, 0.01);
    for (int t = 0; t < 3; ++t) passes[t] += reports[static_cast<std::size_t>(t)].passed ? 1 : 0;
  }

  std::vector<std::uint8_t> zeros(4096, 0);
  std::vector<std::uint8_t> alternating(4096);
  for (std::size_t i = 0; i < alternating.size(); ++i) alternating[i] = i % 2;
  auto verdicts = [](const std::vector<std::uint8_t>& bits) {
    std::vector<bool> v;
    for (const auto& r : randstat::battery(bits, 0.01)) v.push_back(r.passed);
    return v;
  };
  // all-zeros: monobit, runs (prerequisite) and serial fail.
  // alternating: monobit passes, runs fails (too many runs), serial fails (only "01").
  const bool zeros_ok = verdicts(zeros) == std::vector<bool>{false, false, false};
  const bool alt_ok = verdicts(alternating) == std::vector<bool>{true, false, false};
  const bool ok = passes[0] >= 190 && passes[1] >= 190 && passes[2] >= 190 && zeros_ok && alt_ok;
  return {ok, "passes/200: monobit=" + std::to_string(passes[0]) + " runs=" +
                  std::to_string(passes[1]) + " serial=" + std::to_string(passes[2]) +
                  " (need >= 190); zeros verdicts " + (zeros_ok ? "F,F,F" : "UNEXPECTED") +
                  "; alternating verdicts " + (alt_ok ? "P,F,F" : "UNEXPECTED")};
}

Outcome avalanche_digest() {
  std::vector<std::uint8_t> key(32);
  Xorshift64Star key_rng(0xD16E57);
  for (auto& b : key) b = static_cast<std::uint8_t>(key_rng.next());

  std::size_t replay_failures = 0;
  std::size_t calls = 0;
  std::uint64_t l_symbols = 0;
  std::uint64_t symbols = 0;
  const randstat::ByteFunction fn = [&](std::span<const std::uint8_t> msg) {
    const auto r = dyncompose::digest(key, msg);
    ++calls;
    if (dyncompose::replay_digest(key, msg, r.trace) != r.bytes) ++replay_failures;
    for (const BranchSymbol s : r.trace) l_symbols += s == BranchSymbol::L ? 1 : 0;
    symbols += r.trace.size();
    return std::vector<std::uint8_t>(r.bytes.begin(), r.bytes.end());
  };
  const auto av = randstat::avalanche(fn, 32, 1000, 0xA7A1A);
  const double l_frac = static_cast<double>(l_symbols) / static_cast<double>(symbols);

  // Fresh random (key, message) pairs.
  Xorshift64Star rng(0x5EED);
  std::uint64_t pair_l = 0, pair_total = 0;
  for (int i = 0; i < 1000; ++i) {
    std::vector<std::uint8_t> k(32), m(1 + rng.below(96));
    for (auto& b : k) b = static_cast<std::uint8_t>(rng.next());
    for (auto& b : m) b = static_cast<std::uint8_t>(rng.next());
    const auto r = dyncompose::digest(k, m);
    for (const BranchSymbol s : r.trace) pair_l += s == BranchSymbol::L ? 1 : 0;
    pair_total += r.trace.size();
  }
  const double pair_frac = static_cast<double>(pair_l) / static_cast<double>(pair_total);

  const bool ok = av.mean >= 0.48 && av.mean <= 0.52 && replay_failures == 0 && calls == 2000 &&
                  l_frac >= 0.45 && l_frac <= 0.55 && pair_frac >= 0.45 && pair_frac <= 0.55;
  return {ok, "mean flip fraction=" + fmt(av.mean) + " (in [0.48,0.52]); replay failures=" +
                  std::to_string(replay_failures) + "/" + std::to_string(calls) +
                  "; L-fraction=" + fmt(l_frac) + ", random key/message pairs " + fmt(pair_frac) +
                  " (in [0.45,0.55])"};
}

// ---------------------------------------------------------------------------
// CLI subprocess helpers.

struct Proc {
  int code;
  std::string out;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

fs::path work_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("branchtrace_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

Proc cli(const std::string& args) {
  const fs::path out = work_dir() / "stdout.txt";
  const std::string cmd = std::string("'") + BRANCHTRACE_CLI + "' " + args + " > '" +
                          out.string() + "' 2> '" + (work_dir() / "stderr.txt").string() + "'";
  const int status = std::system(cmd.c_str());
  const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return {code, slurp(out)};
}

std::string wfile(const std::string& name) { return "'" + (work_dir() / name).string() + "'"; }

Outcome golden_files() {
  const Proc pbm = cli("rule30 --init single --steps 4 --pbm " + wfile("golden.pbm"));
  const bool pbm_ok = pbm.code == 0 && slurp(work_dir() / "golden.pbm") ==
                                           slurp(BRANCHTRACE_GOLDEN_DIR "/rule30_single_4.pbm");

  std::ofstream(work_dir() / "empty.bin", std::ios::binary).close();
  const Proc dig = cli("digest --key " + std::string(64, '0') + " --in " + wfile("empty.bin") +
                       " --emit-trace");
  const bool dig_ok =
      dig.code == 0 && dig.out == slurp(BRANCHTRACE_GOLDEN_DIR "/digest_empty_zero_key.txt");
  return {pbm_ok && dig_ok, std::string("rule30 PBM ") + (pbm_ok ? "byte-identical" : "DIFFERS") +
                                "; empty-message digest " + (dig_ok ? "matches" : "DIFFERS") +
                                " golden vector"};
}

Outcome cli_contract() {
  {
    std::string alternating;
    for (int i = 0; i < 50; ++i) alternating += "01";
    std::ofstream(work_dir() / "alt.txt") << alternating;
    std::ofstream(work_dir() / "ones.txt") << std::string(100, '1');
    std::ofstream(work_dir() / "junk.txt") << "01201";
    std::ofstream(work_dir() / "msg.bin") << "hello";
  }
  const std::string key(64, 'a');
  const std::string no_dir = wfile("missing/dir/out");
  struct Case {
    std::string args;
    int expected;
  };
  const std::vector<Case> cases = {
      {"trace 6", 0},
      {"trace 1", 0},
      {"trace 0", 2},
      {"trace 6 --format pbm", 2},
      {"invert --trace LRLRLLLL --terminal 1", 0},
      {"invert --trace '' --terminal 7", 0},
      {"invert --trace R --terminal 1", 2},
      {"survey 1 10", 0},
      {"survey 5 5", 0},
      {"survey 10 1", 2},
      {"survey 1 10 --out " + no_dir, 3},
      {"rule30 --init single --steps 4", 0},
      {"rule30 --init single --mode wrap", 2},
      {"rule30 --init random --steps 4", 2},
      {"rule30 --init single --steps 4 --pbm " + no_dir, 3},
      {"test monobit --in " + wfile("alt.txt"), 0},
      {"test monobit --in " + wfile("ones.txt"), 1},
      {"test runs --in " + wfile("alt.txt"), 1},
      {"test monobit --in " + wfile("junk.txt"), 2},
      {"test serial --in " + wfile("alt.txt") + " --k 7", 2},
      {"bound 1 1", 0},
      {"bound 1 10 --format csv", 0},
      {"bound 10 1", 2},
      {"bound 1 10 --out " + no_dir, 3},
      {"digest --key " + key + " --in " + wfile("msg.bin"), 0},
      {"digest --key " + key.substr(1) + " --in " + wfile("msg.bin"), 2},
      {"digest --key " + key + " --in " + wfile("absent.bin"), 2},
      {"frobnicate", 2},
      {"", 2},
  };
  int ok = 0;
  std::string failures;
  for (const Case& c : cases) {
    const Proc p = cli(c.args);
    if (p.code == c.expected) {
      ++ok;
    } else {
      failures += " [" + c.args + " -> " + std::to_string(p.code) + ", want " +
                  std::to_string(c.expected) + "]";
    }
  }
  const Proc a = cli("digest --key " + key + " --in " + wfile("msg.bin") + " --emit-trace");
  const Proc b = cli("digest --key " + key + " --in " + wfile("msg.bin") + " --emit-trace");
  const bool deterministic = a.out == b.out && !a.out.empty();
  return {ok == static_cast<int>(cases.size()) && deterministic,
          std::to_string(ok) + "/" + std::to_string(cases.size()) +
              " exit codes as specified; repeated digest output " +
              (deterministic ? "identical" : "DIFFERS") + failures};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "Convergence slice [1, 1e6]", convergence_slice},
      {2, "Codec roundtrip and injectivity", codec_roundtrip},
      {3, "Oracle spot checks", oracle_spot_checks},
      {4, "Halving bound / b <= r report", bound_property},
      {5, "Rule 30 correctness", rule30_correctness},
      {6, "Entropy indifference", entropy_indifference},
      {7, "Battery calibration", battery_calibration},
      {8, "Avalanche and trace replay", avalanche_digest},
      {9, "Golden files", golden_files},
      {10, "CLI exit-code contract", cli_contract},
  };

  int failed = 0;
  for (const Criterion& c : criteria) {
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += o.passed ? 0 : 1;
    std::cout << (o.passed ? "[PASS] " : "[FAIL] ") << "AC" << c.id << " " << c.name << ": "
              << o.detail << "\n";
  }
  fs::remove_all(work_dir());
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size()
            << " acceptance criteria passed\n";
  return failed == 0 ? 0 : 1;
}
