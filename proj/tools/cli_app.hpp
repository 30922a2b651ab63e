// The `lfun` command-line front end, callable in-process for tests.
#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace lfun::cli {

enum ExitCode : int { kOk = 0, kConfigError = 2, kNonConvergence = 3, kPropertyViolation = 4 };

/// args excludes the program name. Data goes to `out` unless --out is given;
/// diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lfun::cli
