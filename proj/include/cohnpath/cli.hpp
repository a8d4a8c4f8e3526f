#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cohnpath {

/// Command-line front end.  `args` is the argument vector without the
/// program name; reports go to `out`, diagnostics to `err`.  Returns the
/// process exit code: 0 on success, 1 on a mathematical negative verdict
/// (the report carries the witness), 2 on an input error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cohnpath
