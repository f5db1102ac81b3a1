#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace locsym::cli {

enum ExitCode : int { kOk = 0, kViolated = 1, kUsage = 2, kUnsupported = 3 };

/// Runs one invocation; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace locsym::cli
