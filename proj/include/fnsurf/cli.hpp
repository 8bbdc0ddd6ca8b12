#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fnsurf {

/// Exit codes of the fnsurf command line tool.
enum ExitCode : int { kExitOk = 0, kExitMathFailure = 1, kExitUsage = 2 };

/// Runs the tool on argv (argv[0] is the program name).
int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace fnsurf
