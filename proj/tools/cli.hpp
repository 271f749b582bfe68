#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace eisenpack::cli {

/// Process exit codes; every error prints a one-line machine-parsable
/// `error: category=<name> message="..."` on the error stream.
enum ExitCode : int {
    kOk = 0,
    kUsage = 2,       // unknown flags, bad values, unsupported combinations
    kBadInput = 3,    // malformed spec/code/config files
    kInfeasible = 4,  // requests beyond enumeration/coset caps
    kInternal = 5,
};

/// Full command-line surface; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace eisenpack::cli
