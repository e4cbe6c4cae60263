#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nrep::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int { kPass = 0, kCheckFailed = 1, kUsageError = 2 };

/// Runs one command. `args` excludes the program name. JSON reports go to
/// `out`, human diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nrep::cli
