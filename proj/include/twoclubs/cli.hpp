#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace twoclubs::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kUsage = 2,
  kParse = 3,
  kBudget = 4,
  kStrict = 5,
};

/// Entry point behind the `twoclubs` binary. args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace twoclubs::cli
