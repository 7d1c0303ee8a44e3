#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qli::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitUsage = 2;

// Runs the command line `args` (without the program name). Normal output
// goes to `out`, diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace qli::cli
