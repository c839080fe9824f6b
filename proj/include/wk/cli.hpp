// cli.hpp - command-line entry point, reusable in-process for tests
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wk {

/// Runs the `wk` command line. `args` excludes the program name. Exit codes:
/// 0 success / accept / equivalent, 1 reject / counterexample, 2 any error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wk
