#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wshift::cli {

enum ExitCode : int {
  kSuccess = 0,
  kCheckFailed = 1,
  kInputError = 2,
  kBudgetExceeded = 3,
  kLosingPosition = 4,
};

/// Runs one subcommand. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace wshift::cli
