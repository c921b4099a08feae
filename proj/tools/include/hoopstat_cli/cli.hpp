#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hoopstat::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kData = 3,    // unreadable or invalid input, unwritable output
  kDomain = 4,  // numerical precondition violated
};

/// Runs one command.  `args` excludes the program name.  Reports go to
/// `out` (or --output); failures print one "hoopstat: <kind> error: <message>"
/// line on `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hoopstat::cli
