#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nutrilp::cli {

enum ExitCode : int {
    kOk = 0,
    kInputError = 1,
    kInfeasible = 2,
};

/// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nutrilp::cli
