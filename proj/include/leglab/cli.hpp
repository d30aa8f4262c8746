#pragma once

// legendrian-lab {verify|table|energy|classify} [options]
//
// Exit codes: 0 all checks pass, 1 a numeric check failed, 2 configuration,
// parse or evaluation error.

#include <ostream>
#include <string>
#include <vector>

namespace leglab {

/// Runs the command line in-process. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace leglab
