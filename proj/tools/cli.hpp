#pragma once

#include <ostream>

namespace qsl::cli {

enum ExitCode : int {
  kOk = 0,
  kUsageError = 1,
  kNumericalError = 2,
  kIoError = 3,
};

/// Entry point of the `qsl` tool, with injectable streams for testing.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qsl::cli
