#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cbn/io.hpp"

namespace cbn {

/// Process exit codes.
enum ExitCode : int { kExitOk = 0, kExitFail = 1, kExitData = 2, kExitModel = 3, kExitCap = 4 };

/// Runs the `cbn` command line (args exclude the program name) and returns
/// the exit code. Subcommands: fit, scan, simulate, verify.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Static scatter of log-likelihood against the incompatible fraction, with
/// bootstrap whiskers where present.
std::string scan_svg(const std::vector<FitReport>& reports);

}  // namespace cbn
