#pragma once

#include <string>
#include <vector>

namespace stocon {

struct CliResult {
    int exit_code = 0;
    std::string out; // the report (stdout)
    std::string err; // diagnostics (stderr)
};

/// Runs one CLI invocation. Exit codes: 0 ok, 1 property violation,
/// 2 unparsable input, 3 precondition failure, 4 internal error.
CliResult run_cli(const std::vector<std::string>& args);

} // namespace stocon
