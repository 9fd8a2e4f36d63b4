// verify --config <path> [--suite NAME]... [--level K]... [--r R] [--qmax N]
//        [--window W] [--guard G] [--report <path>]
// Exit codes: 0 all checks pass, 1 a relation check fails, 2 configuration error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "eqp/harness.hpp"

namespace {

constexpr int kExitConfig = 2;

std::string timings_path(const std::string& report) {
  const std::string ext = ".json";
  if (report.size() > ext.size() && report.compare(report.size() - ext.size(), ext.size(), ext) == 0)
    return report.substr(0, report.size() - ext.size()) + ".timings.json";
  return report + ".timings.json";
}

bool write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  return static_cast<bool>(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Checks the free-field realization relations and writes a JSON report."};
  std::string config_path, report_path;
  std::vector<std::string> suites;
  std::vector<int> levels;
  std::optional<int> r, qmax, window, guard;
  app.add_option("--config", config_path, "flat key = value configuration file")->required();
  app.add_option("--suite", suites, "suite to run (repeatable)");
  app.add_option("--level", levels, "level k (repeatable)");
  app.add_option("--r", r, "elliptic parameter r for every level");
  app.add_option("--qmax", qmax, "certification order in q");
  app.add_option("--window", window, "x-window radius");
  app.add_option("--guard", guard, "theta guard band");
  app.add_option("--report", report_path, "JSON report path");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  eqp::SuiteConfig cfg;
  try {
    std::ifstream in(config_path);
    if (!in) throw eqp::ConfigError({"config: cannot read '" + config_path + "'"});
    std::stringstream text;
    text << in.rdbuf();
    cfg = eqp::parse_config(text.str());
    if (!suites.empty()) cfg.suites = suites;
    if (!levels.empty()) {
      // keep the per-level r values of the file for levels it names
      std::vector<int> rs;
      for (int k : levels) rs.push_back(cfg.r_for(k));
      cfg.levels = levels;
      cfg.r = rs;
    }
    if (r) cfg.r = {*r};
    if (qmax) cfg.qmax = *qmax;
    if (window) cfg.window = *window;
    if (guard) cfg.guard = *guard;
    if (!report_path.empty()) cfg.output = report_path;
    cfg.validate();
  } catch (const eqp::ConfigError& e) {
    for (const auto& f : e.fields) std::cerr << "config error: " << f << "\n";
    return kExitConfig;
  }

  eqp::Report report;
  try {
    report = eqp::run_suites(cfg);
  } catch (const eqp::ConfigError& e) {
    for (const auto& f : e.fields) std::cerr << "config error: " << f << "\n";
    return kExitConfig;
  }
  std::cout << eqp::summary_text(report);
  if (!cfg.output.empty()) {
    if (!write_file(cfg.output, eqp::report_json(report).dump(2) + "\n") ||
        !write_file(timings_path(cfg.output), eqp::timings_json(report).dump(2) + "\n")) {
      std::cerr << "cannot write report to " << cfg.output << "\n";
      return kExitConfig;
    }
  }
  return report.exit_code();
}
