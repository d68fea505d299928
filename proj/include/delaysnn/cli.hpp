#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace delaysnn {

enum ExitCode : int {
    exit_ok = 0,
    exit_usage = 1,
    exit_io = 2,
    exit_simulation = 3,
    exit_divergence = 4,
};

/// Runs the command line `args` (args[0] is the program name). Data goes to
/// `out`, diagnostics to `err`. DELAYSNN_VERBOSE=0 silences progress notes,
/// 2 adds per-core metrics.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace delaysnn
