#pragma once

#include <ostream>

namespace draftwatch::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitData = 3;

// Parses argv (argv[0] is the program name) and runs one subcommand:
// serve, issue-credential, revoke-credential, set-phase, simulate, compact,
// replay, analyze, score. Returns the process exit code.
int Run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace draftwatch::cli
