#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ultranorm::cli {

/// Runs one CLI invocation. `args` excludes the program name. Results go to
/// --out or `out`; errors go to `err` as a single JSON object.
/// Exit codes: 0 ok, 1 internal error, 2 usage/schema error, 3 precondition failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ultranorm::cli
