#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace coverspec::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,       // precondition or I/O error
  kParseError = 2,    // bad command line or input file
  kBudget = 3,        // a size budget was exceeded
  kVerifyFailed = 4,  // an invariant check did not hold
};

// Runs one command line (args excludes the program name). Reports go to
// `out` unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace coverspec::cli
