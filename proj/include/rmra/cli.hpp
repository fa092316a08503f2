#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rmra::cli {

/// Process exit codes.
enum ExitCode : int {
    kOk = 0,
    kValidationFailed = 1,
    kUsage = 2,
    kAborted = 3,  ///< budget or overflow
};

/// Runs the command line `args` (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rmra::cli
