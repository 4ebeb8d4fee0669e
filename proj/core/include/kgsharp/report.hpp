#pragma once

// Verification reports and their JSON / CSV serialization.

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kgsharp {

struct ReportEntry {
  std::string name;
  double computed = 0.0;
  double reference = 0.0;
  double rel_err = 0.0;
  bool pass = false;
  double runtime_ms = 0.0;
  std::string note;  // reason for a failure, empty otherwise
};

inline constexpr double kRelErrFloor = 1e-300;

double relative_error(double computed, double reference);

struct VerificationReport {
  std::string command;
  std::vector<std::pair<std::string, std::string>> params;
  std::vector<ReportEntry> entries;

  [[nodiscard]] bool overall_pass() const;

  // Appends an entry with rel_err filled in from computed and reference.
  ReportEntry& add(std::string name, double computed, double reference, bool pass, double runtime_ms = 0.0,
                   std::string note = {});
  void merge(const VerificationReport& other);
};

enum class ReportFormat { Json, Csv };

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string to_json(const VerificationReport& report);
std::string to_csv(const VerificationReport& report);

// Writes the report to path, or to stdout when path is empty or "-".
void emit(const VerificationReport& report, ReportFormat format, const std::string& path);

// Parses the CSV produced by to_csv.
std::vector<ReportEntry> parse_csv(const std::string& text);

}  // namespace kgsharp
