#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <ostream>
#include <sstream>

#include "kgsharp/commands.hpp"
#include "kgsharp/report.hpp"

namespace kgsharp::cli {

int run(const std::vector<std::string>& args, std::ostream& err) {
  CLI::App app{"Numerical verification of the sharp bilinear Klein-Gordon estimates", "kgsharp"};
  app.set_help_all_flag("--help-all");

  std::string command;
  std::string format = "json";
  std::string output;
  std::string a_list;
  CommandOptions opt;
  int dim = 0;
  double mass = 0.0;
  double tol = 0.0;
  int points = 0;

  std::string names;
  for (const auto& n : command_names()) names += (names.empty() ? "" : ", ") + n;
  app.add_option("command", command, "One of: " + names)->required()->check(CLI::IsMember(command_names()));
  auto* dim_opt = app.add_option("--dim", dim, "Restrict to spatial dimension d")->check(CLI::PositiveNumber);
  auto* mass_opt = app.add_option("--mass", mass, "Restrict to mass s")->check(CLI::NonNegativeNumber);
  auto* tol_opt = app.add_option("--tol", tol, "Quadrature relative tolerance")->check(CLI::Range(1e-15, 0.1));
  app.add_option("--seed", opt.seed, "Seed of the counter-based generator");
  auto* points_opt = app.add_option("--points", points, "Random points (or samples) per sweep entry")
                         ->check(CLI::PositiveNumber);
  app.add_option("--a", a_list, "Comma-separated a-grid, e.g. 1,0.3,0.1");
  app.add_option("--output", output, "Report path (stdout when omitted or '-')");
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "csv"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    err << app.help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp& e) {
    err << app.help("", CLI::AppFormatMode::All);
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "kgsharp: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  opt.command = command;
  if (*dim_opt) opt.dim = dim;
  if (*mass_opt) opt.mass = mass;
  if (*tol_opt) opt.tol = tol;
  if (*points_opt) opt.points = points;
  if (!a_list.empty()) {
    std::stringstream ss(a_list);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        std::size_t used = 0;
        const double v = std::stod(item, &used);
        if (used != item.size()) throw std::invalid_argument(item);
        opt.a_grid.push_back(v);
      } catch (const std::exception&) {
        err << "kgsharp: --a: cannot parse '" << item << "'\n";
        return kExitUsage;
      }
    }
  }

  VerificationReport report;
  try {
    report = run_command(opt);
  } catch (const UsageError& e) {
    err << "kgsharp: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "kgsharp: " << command << " aborted: " << e.what() << "\n";
    return kExitFail;
  }

  try {
    emit(report, format == "csv" ? ReportFormat::Csv : ReportFormat::Json, output);
  } catch (const IoError& e) {
    err << "kgsharp: " << e.what() << "\n";
    return kExitIo;
  }
  return exit_code(report);
}

}  // namespace kgsharp::cli
