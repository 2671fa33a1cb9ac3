#pragma once

#include <string>
#include <vector>

namespace rotabouss::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNumerical = 1;
inline constexpr int kExitUsage = 2;

// Appends flags taken from the file named by --config: the parameter keys of a
// plain config, plus the recorded settings of a run manifest written by the
// same subcommand. Flags already on the command line win.
std::vector<std::string> expand_config(std::vector<std::string> args);

// Parses and runs one subcommand; returns the process exit code.
int dispatch(std::vector<std::string> args);

}  // namespace rotabouss::cli
