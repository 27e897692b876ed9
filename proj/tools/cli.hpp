#pragma once

#include <iosfwd>

namespace branchtrace::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kSuccess = 0,
  kStatisticalFail = 1,
  kUsageError = 2,
  kIoError = 3,
};

/// Parses argv and runs one subcommand, writing results to `out` and
/// diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace branchtrace::cli
