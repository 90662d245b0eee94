#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rigidlab::cli {

enum ExitCode : int { kSuccess = 0, kCheckFailed = 1, kUsageError = 2 };

/// Entry point behind the `rigidlab` executable. Subcommands: spectrum,
/// check, estimate, fuzz. JSON goes to `out` (or --json FILE) followed by a
/// one-line summary; diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rigidlab::cli
