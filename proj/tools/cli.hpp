#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace equisched::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;          // feasible / verified / done
inline constexpr int kExitNegative = 1;    // infeasible / verification failed
inline constexpr int kExitUsage = 2;       // usage, format or validation error
inline constexpr int kExitGuard = 3;       // a search guard was exceeded

/// Runs one invocation. `args` excludes the program name.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace equisched::cli
