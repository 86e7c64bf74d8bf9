#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace warmflow {

// Runs one command line (program name excluded). Returns the exit code:
// 0 on success, 1 on bad input or usage, 2 on an internal invariant failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace warmflow
