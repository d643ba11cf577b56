#ifndef PAMED_RUNNER_HPP
#define PAMED_RUNNER_HPP

#include "pamed/config.hpp"

namespace pamed {

// Exit statuses of a batch run.
inline constexpr int kExitSuccess = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitNoConvergence = 3;

/// Executes the configured tasks, writes report.json plus the CSV/text
/// artifacts into output.directory, and returns the exit status.
int run(const RunConfig& config);

}  // namespace pamed

#endif  // PAMED_RUNNER_HPP
