#pragma once

#include <iosfwd>

namespace newton2d::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kNoSolution = 2,
  kVerificationFailed = 3,
};

/// Entry point behind the `newton2d` executable. JSON goes to `out`,
/// diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);

}  // namespace newton2d::cli
