// SPDX-License-Identifier: Apache-2.0

#ifndef EHAP_TOOLS_CLI_H
#define EHAP_TOOLS_CLI_H

#include <iosfwd>

namespace ehap::cli {

/// Exit codes of the command-line driver.
enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kConfig = 2,
};

/// Runs the `ehap` command line. Results go to `out`, diagnostics and usage
/// text to `err`.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace ehap::cli

#endif // EHAP_TOOLS_CLI_H
