#pragma once

#include <optional>
#include <ostream>
#include <string>

#include "rst/app/config.hpp"

namespace rst::app {

enum ExitCode : int {
  kSuccess = 0,
  kConfigError = 2,
  kToleranceFailure = 3,
  kDomainError = 4,
};

// Runs one job and writes its table to `out`. Library exceptions propagate;
// run_cli maps them to exit codes.
int run(Mode mode, const JobConfig& config, std::ostream& out);

// Full command line handling: `<binary> <mode> --input <path> [--output <path>]
// [--format json|csv] [--tol <real>]`.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace rst::app
