#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tapline {

enum ExitCode : int {
    kExitOk = 0,
    kExitFailure = 1,
    kExitConfig = 2,
    kExitInfeasible = 3,
    kExitIo = 4,
};

/// Command-line entry point. `args` includes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tapline
