#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace smeans {

enum ExitCode
{
    exit_ok = 0,
    exit_usage = 1,
    exit_data = 2,
    exit_numerical = 3,
};

/// Runs one CLI invocation; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace smeans
