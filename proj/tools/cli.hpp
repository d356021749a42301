#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace zonelab::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kInputParse = 2, kInternal = 3 };

/// Runs the command line `args` (without the program name). Artifacts go to
/// `out` unless an --output path is given; diagnostics and summary lines go
/// to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace zonelab::cli
