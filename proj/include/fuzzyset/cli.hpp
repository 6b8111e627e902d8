#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fuzzyset::cli {

/// Exit statuses of the command-line tool.
enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kUsageError = 2,
};

/// Runs one command line (args excludes the program name). Results go to
/// `out`, diagnostics to `err`. Returns the process exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fuzzyset::cli
