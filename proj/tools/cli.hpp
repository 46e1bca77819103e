#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mckay::cli {

enum ExitCode : int { kOk = 0, kUsage = 2, kDegenerate = 3, kIo = 4 };

/// Runs the tool on argv-style arguments (args[0] is the program name).
/// Data goes to `out` unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mckay::cli
