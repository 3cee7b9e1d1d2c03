#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace dopsym::cli {

enum ExitCode : int { ok = 0, identity_failed = 1, bad_input = 2, oracle_disagreement = 3 };

/// Runs the command line `args` (without the program name) and returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dopsym::cli
