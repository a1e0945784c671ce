#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace thermowit {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitNumerical = 2, kExitValidation = 3 };

/// Worker count variable read before any parallel kernel runs.
inline constexpr const char* kWorkersEnv = "THERMOWIT_WORKERS";

/// Runs the `thermowit` command line. Results go to `out` (or the file named
/// by --output), diagnostics to `err`.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace thermowit
