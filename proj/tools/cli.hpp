#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace subuniv::cli {

/// Runs one invocation. `args` excludes the program name. Returns 0 on
/// success, 1 on domain errors and 2 on usage errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace subuniv::cli
