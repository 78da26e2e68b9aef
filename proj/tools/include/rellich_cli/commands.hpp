#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rellich::cli {

enum ExitCode : int { kOk = 0, kViolation = 1, kInputError = 2 };

/// Full command line: `rellich <subcommand> [flags]`. CSV goes to --out or
/// to `out`; diagnostics and violation reports go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rellich::cli
