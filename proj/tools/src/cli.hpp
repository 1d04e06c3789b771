#pragma once

#include <iosfwd>

namespace ppspec::cli {

enum ExitCode : int { ok = 0, failure = 1, usage = 2, numerical = 3 };

// Entry point of the `ppspec` tool. Never throws; maps errors to exit codes.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace ppspec::cli
