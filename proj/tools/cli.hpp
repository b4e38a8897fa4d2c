#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace prptl::cli {

enum exit_code : int {
  success = 0, ///< also "holds"
  fails = 1,
  usage_error = 2,
  computation_error = 3,
  inconclusive = 4
};

/// Runs the command line `args` (args[0] is the program name). Results go to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace prptl::cli
