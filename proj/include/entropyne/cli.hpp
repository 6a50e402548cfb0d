// cli.hpp - command-line front end (qubit-grid, amplifier-grid, gaussian-z,
// tsallis, verify)

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace entropyne {

enum ExitCode : int {
    kExitOk = 0,
    kExitVerifyFailed = 1,
    kExitUsage = 2,
    kExitDomain = 3,
};

// args excludes the program name. Results go to `out` unless --output names
// a file; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace entropyne
