#include "kgsharp/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace kgsharp {

namespace {

std::string number(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return number(x);
}

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\t':
        out += "\\t";
        break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out + "\"";
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool in_quotes = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (in_quotes) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        in_quotes = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      in_quotes = true;
    } else if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(cur);
  return fields;
}

}  // namespace

double relative_error(double computed, double reference) {
  return std::abs(computed - reference) / std::max(std::abs(reference), kRelErrFloor);
}

bool VerificationReport::overall_pass() const {
  for (const auto& e : entries) {
    if (!e.pass) return false;
  }
  return true;
}

ReportEntry& VerificationReport::add(std::string name, double computed, double reference, bool pass,
                                     double runtime_ms, std::string note) {
  entries.push_back(
      {std::move(name), computed, reference, relative_error(computed, reference), pass, runtime_ms, std::move(note)});
  return entries.back();
}

void VerificationReport::merge(const VerificationReport& other) {
  for (const auto& e : other.entries) {
    ReportEntry copy = e;
    copy.name = other.command + "/" + e.name;
    entries.push_back(std::move(copy));
  }
}

std::string to_json(const VerificationReport& report) {
  std::ostringstream os;
  os << "{\n  \"command\": " << quoted(report.command) << ",\n  \"params\": {";
  for (std::size_t i = 0; i < report.params.size(); ++i) {
    os << (i ? ", " : "") << quoted(report.params[i].first) << ": " << quoted(report.params[i].second);
  }
  os << "},\n  \"entries\": [";
  for (std::size_t i = 0; i < report.entries.size(); ++i) {
    const auto& e = report.entries[i];
    os << (i ? ",\n    " : "\n    ") << "{\"name\": " << quoted(e.name) << ", \"computed\": " << number(e.computed)
       << ", \"reference\": " << number(e.reference) << ", \"rel_err\": " << number(e.rel_err)
       << ", \"pass\": " << (e.pass ? "true" : "false") << ", \"runtime_ms\": " << number(e.runtime_ms)
       << ", \"note\": " << quoted(e.note) << "}";
  }
  os << (report.entries.empty() ? "" : "\n  ") << "],\n  \"overall_pass\": "
     << (report.overall_pass() ? "true" : "false") << "\n}\n";
  return os.str();
}

std::string to_csv(const VerificationReport& report) {
  std::ostringstream os;
  os << "name,computed,reference,rel_err,pass,runtime_ms\n";
  for (const auto& e : report.entries) {
    os << csv_field(e.name) << ',' << csv_number(e.computed) << ',' << csv_number(e.reference) << ','
       << csv_number(e.rel_err) << ',' << (e.pass ? "true" : "false") << ',' << csv_number(e.runtime_ms) << '\n';
  }
  return os.str();
}

void emit(const VerificationReport& report, ReportFormat format, const std::string& path) {
  const std::string text = format == ReportFormat::Json ? to_json(report) : to_csv(report);
  if (path.empty() || path == "-") {
    std::cout << text << std::flush;
    if (!std::cout) throw IoError("failed to write report to stdout");
    return;
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << text;
  out.close();
  if (!out) throw IoError("failed to write " + path);
}

std::vector<ReportEntry> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<ReportEntry> out;
  if (!std::getline(in, line) || line != "name,computed,reference,rel_err,pass,runtime_ms") {
    throw std::invalid_argument("parse_csv: missing header");
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 6) throw std::invalid_argument("parse_csv: expected 6 fields");
    ReportEntry e;
    e.name = f[0];
    e.computed = std::stod(f[1]);
    e.reference = std::stod(f[2]);
    e.rel_err = std::stod(f[3]);
    e.pass = f[4] == "true";
    e.runtime_ms = std::stod(f[5]);
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace kgsharp
