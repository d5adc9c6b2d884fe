#pragma once

#include <string>
#include <vector>

namespace jetinv {

struct CliResult {
    int exit_code = 0;       // 0 computed, 1 usage error, 2 precondition failure
    std::string output;      // JSON report (or an error report)
};

// Run one CLI command, given argv-style arguments without the program name.
CliResult run_command(const std::vector<std::string>& args);

}  // namespace jetinv
