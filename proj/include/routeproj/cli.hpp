#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace routeproj::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitRuntime = 2;

/// Runs the command line `args` (without the program name). Subcommands:
/// gen, solve, evolve, bench, oracle. Returns 0 on success, 1 for invalid
/// configuration, 2 for failures while running.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace routeproj::cli
