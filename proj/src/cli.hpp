#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hemsim::cli {

enum ExitCode : int {
  kOk = 0,
  kConfigError = 2,
  kInfeasibleScenario = 3,
  kInternalError = 4,
  kSearchSpaceTooLarge = 5,
};

/// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hemsim::cli
