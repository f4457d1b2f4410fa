#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pgap {

/// Process exit codes of the command-line front end.
enum ExitCode : int {
    kExitOk = 0,
    kExitFalsified = 1,
    kExitUsage = 2,
    kExitRegime = 3,
    kExitSolver = 4,
};

/// Runs the command line `args` (without the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pgap
