// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace bbgwo::cli {

enum ExitCode : int { kOk = 0, kValidationError = 1, kRuntimeError = 2 };

/// Runs the command line (args[0] is the program name). Diagnostics go to
/// `err`, summaries and best values to `out`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bbgwo::cli
