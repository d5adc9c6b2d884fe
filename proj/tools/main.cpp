#include <cstdio>
#include <string>
#include <vector>

#include "jetinv/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    jetinv::CliResult res = jetinv::run_command(args);
    if (!res.output.empty()) std::fputs(res.output.c_str(), stdout);
    return res.exit_code;
}
