#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace harmless::cli {

enum ExitCode : int { kOk = 0, kNo = 1, kError = 2 };

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace harmless::cli
