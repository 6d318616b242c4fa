#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace twinbeam::cli {

enum ExitCode : int {
    kSuccess = 0,
    kNumericalFailure = 1,
    kValidationFailure = 2,
};

/// Runs one invocation. `args` excludes the program name. Data goes to `out`
/// unless --output is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace twinbeam::cli
