#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wstc {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitData = 2, kExitEngine = 3 };

/// Runs the command line (args excludes the program name). Diagnostics go to `err`,
/// short summaries to `out`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wstc
