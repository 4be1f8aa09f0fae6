#pragma once

#include <functional>
#include <iosfwd>
#include <string>

namespace fcv::cli {

enum ExitCode {
  kOk = 0,
  kCheckFailed = 1,
  kUsageError = 2,
  kDiverged = 3,
};

struct RunHooks {
  /// Called after each output file is staged, before anything is committed.
  /// Throwing aborts the command as if it had failed there.
  std::function<void(const std::string& path)> after_stage;
};

/// Runs one fcv command line. Reports go to `out` when no output path is
/// given; diagnostics go to `err` as a single line.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
        const RunHooks& hooks = {});

}  // namespace fcv::cli
