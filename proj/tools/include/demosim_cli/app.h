#pragma once

#include <ostream>

namespace demosim::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_config = 1,
    exit_assumption = 2,
    exit_internal = 70,
    exit_usage = 64,
    exit_io = 74,
};

/// Entry point behind the demosim executable; subcommands run, validate
/// and defaults.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace demosim::cli
