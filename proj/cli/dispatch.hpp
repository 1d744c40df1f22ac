#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace rarewalk::cli {

/// Parses and runs one CLI invocation. `args` excludes the program name.
/// Reports go to `out`; diagnostics and usage go to `err`. Returns 0 on
/// success and 2 on unknown subcommands or parameter errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace rarewalk::cli
