#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace telic::cli {

/// Runs one subcommand. args excludes the program name. Exit codes:
/// 0 success, 1 decision "no" in solve decision mode, 2 usage or input
/// error, 3 resource budget exceeded.
int dispatch(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err);

}  // namespace telic::cli
