#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace swb {

/// Runs the `swb` command line. Exit codes: 0 success, 1 domain failure,
/// 2 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace swb
