#pragma once

#include <string>
#include <vector>

namespace spinmet {

// Dispatches the spinmet subcommands.  Exit codes: 0 success, 1 input error,
// 2 numerical failure; failures leave a one-line machine-parsable reason on
// the diagnostic stream and never emit partial output files.
int run_cli(const std::vector<std::string>& args);

}  // namespace spinmet
