#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace foilgen::cli {

inline constexpr int kExitOk = 0;       // command completed
inline constexpr int kExitUsage = 2;    // bad flags or malformed/unusable input
inline constexpr int kExitNumeric = 3;  // training or generation diverged

/// Entry point of the `foilgen` tool. `args` holds the command-line
/// arguments after the program name, in their natural order. Diagnostics go
/// to `err`, normal output to `out`. Returns one of the exit codes above.
///
/// Every subcommand accepts `--config FILE`, a JSON object whose keys are
/// the long flag names; explicit flags win over config-file values. Every
/// command that writes a file also writes `<file>.manifest.json` describing
/// the resolved settings, inputs and outputs of the run.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace foilgen::cli
