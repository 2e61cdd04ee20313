#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace menu_adapt::cli {

enum ExitStatus : int {
  kSuccess = 0,
  kValidationFailure = 1,
  kInvariantViolation = 2,
};

// Runs one command line (without the program name). Normal output goes to
// `out`, diagnostics to `err`.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace menu_adapt::cli
