#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sptorsion::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kSuccess = 0,
  kNegative = 1,  // non-member, failed verification, failed bound
  kUsage = 2,     // parse errors, invalid arguments, refused work
};

/// Runs the command line `args` (args[0] is the program name). Output goes
/// to `out`, diagnostics to `err`; nothing touches the process streams.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sptorsion::cli
