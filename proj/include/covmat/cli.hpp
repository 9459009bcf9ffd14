#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace covmat {

/// Exit codes of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitParse = 2,
    kExitPrecondition = 3,
    kExitInvariant = 4,
};

/// Runs one command line (without the program name). Never throws.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace covmat
