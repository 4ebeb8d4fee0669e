#pragma once

// Named verification commands. Each command runs one family of checks and
// returns a report whose entries carry their own pass/fail verdicts.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kgsharp/report.hpp"

namespace kgsharp {

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct CommandOptions {
  std::string command;
  std::optional<int> dim;      // restricts sweeps over d
  std::optional<double> mass;  // restricts sweeps over s
  std::optional<double> tol;   // quadrature relative tolerance, per-command default otherwise
  std::uint64_t seed = 0;
  std::optional<int> points;  // random points per (d, s) or samples per bound
  std::vector<double> a_grid;
};

const std::vector<std::string>& command_names();

// Throws UsageError for an unknown command or an option it cannot honour.
VerificationReport run_command(const CommandOptions& options);

inline int exit_code(const VerificationReport& report) { return report.overall_pass() ? 0 : 1; }

}  // namespace kgsharp
