#pragma once

// Command-line surface: protocol inspection, reconstruction, error reports,
// Monte Carlo simulation, state comparison with error-disk figures, and the
// golden-suite fixture validator.

#include <iosfwd>
#include <string>
#include <vector>

namespace tomo {

// Run the tool on an argument list (no program name). Writes results to
// `out`, diagnostics to `err`, and returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tomo
