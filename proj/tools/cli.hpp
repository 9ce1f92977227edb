#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sparsesel::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_input_error = 1,
    exit_check_failed = 2,
    exit_not_converged = 3,
};

/// Runs the command line `args` (args[0] is the program name). JSON goes to
/// `out`, messages to `err`. Never throws.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace sparsesel::cli
