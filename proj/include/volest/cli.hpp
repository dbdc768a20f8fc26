#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace volest::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kConfigError = 2,
  kNumericFailure = 3,
  kCheckFailed = 4,
};

// Runs one invocation; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// VOLEST_THREADS, 0 (auto) when unset or unparsable.
unsigned threads_from_env();

}  // namespace volest::cli
