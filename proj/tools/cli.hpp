#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kgsharp::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;

// Parses args (without the program name), runs the command and writes the
// report. Diagnostics go to err.
int run(const std::vector<std::string>& args, std::ostream& err);

}  // namespace kgsharp::cli
