#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace epinet::cli {

enum ExitCode : int { kSuccess = 0, kUsageError = 1, kInputError = 2, kRuntimeError = 3 };

// Runs one command line (args excludes the program name). Normal output goes
// to `out`, diagnostics to `err`.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace epinet::cli
