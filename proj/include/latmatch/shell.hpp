#pragma once

// The `latmatch` command line: subcommands, run reports and exit codes.

#include <iosfwd>
#include <string>
#include <vector>

#include "latmatch/error.hpp"

namespace latmatch::shell {

enum ExitCode : int {
  kOk = 0,
  kValidation = 2,
  kSearchBound = 3,
  kInvariantBreach = 4,
};

ExitCode exit_code_for(ErrorKind kind);

/// Runs one command line; `args` excludes the program name. Artifacts and
/// reports go to files or to `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace latmatch::shell
