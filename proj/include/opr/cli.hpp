#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace opr {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitIo = 2, kExitParse = 3 };

/// Entry point of the `oprminer` tool. `args` excludes the program name.
/// Reports go to `out` (or --out), diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace opr
