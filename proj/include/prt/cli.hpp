#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace prt::cli {

enum ExitStatus : int {
    Success = 0,
    Failed = 1,     // validation errors, or omissions/conversion errors under --strict
    UsageError = 2, // bad arguments, unreadable or unparseable inputs
    Internal = 3,   // invariant violation inside the tool
};

/// Runs one command line (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace prt::cli
