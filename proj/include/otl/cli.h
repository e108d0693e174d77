#pragma once

#include <ostream>

namespace otl::cli {

enum ExitCode : int {
  kSuccess = 0,
  kVerificationFailure = 1,
  kConfigError = 2,
  kResourceLimit = 3,
};

/// Entry point behind the `otl` binary; writes only to the given streams.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace otl::cli
