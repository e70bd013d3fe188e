#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cournot::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitValidation = 2,
  kExitNumerical = 3,
};

/// Entry point of the command-line tool. Results go to `out` unless an
/// output file is configured; diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Same, with the program name prepended to `args`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cournot::cli
