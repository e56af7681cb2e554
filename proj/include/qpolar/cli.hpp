#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qpolar::cli {

enum ExitCode : int { ok = 0, violation = 1, usage = 2 };

/// Runs the command line `args` (args[0] is the program name). Reports go to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qpolar::cli
