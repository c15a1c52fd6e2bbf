#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace quillen::cli {

enum ExitCode : int { kOk = 0, kNegative = 1, kInputError = 2, kInvariantViolation = 3 };

/// Runs the `dgl` command line; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace quillen::cli
