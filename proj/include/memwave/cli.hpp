#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace memwave {

/// Exit codes of the memwave tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitConfig = 2,
    kExitNumerical = 3,
    kExitVerification = 4,
};

/// Runs one memwave command line (argv[0] is the program name). Results go to
/// --out files when given, otherwise to `out`; diagnostics go to `err`.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace memwave
