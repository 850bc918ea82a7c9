#pragma once

// The command-line front end, as a library call so it can be driven from tests.

#include "pencil/report.hpp"

#include <string>
#include <vector>

namespace pencil {

struct RunResult {
  Report report;
  int exit_code = 0;
  /// The rendered report, or help text.
  std::string output;
  /// Usage and error messages meant for stderr.
  std::string diagnostics;
};

/// args excludes the program name.
RunResult run(const std::vector<std::string>& args);

}  // namespace pencil
