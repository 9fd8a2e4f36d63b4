// Runs the default configuration twice and prints one PASS/FAIL line per
// acceptance criterion.  Exits 1 if any criterion fails.

#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "eqp/harness.hpp"

using namespace eqp;

namespace {

bool starts_with(const std::string& s, const std::string& p) { return s.compare(0, p.size(), p) == 0; }

struct Criterion {
  int number;
  std::string text;
  std::function<bool(const CheckResult&)> selects;
  double time_limit = 0;  // seconds; 0 for none
};

// Checks selected by a criterion and whether they all pass.
bool evaluate(const Report& rep, const Criterion& c, std::string& detail) {
  int n = 0;
  double seconds = 0;
  std::vector<std::string> failed;
  for (const auto& ch : rep.checks) {
    if (!c.selects(ch)) continue;
    ++n;
    seconds += ch.wall_seconds;
    if (!ch.pass) failed.push_back(ch.id);
  }
  std::ostringstream os;
  os << n << " checks";
  if (c.time_limit > 0) os << ", " << std::fixed << std::setprecision(1) << seconds << " s";
  bool ok = n > 0 && failed.empty();
  if (c.time_limit > 0 && seconds >= c.time_limit) {
    ok = false;
    os << " (limit " << c.time_limit << " s)";
  }
  if (!failed.empty()) {
    os << "; failed:";
    for (const auto& id : failed) os << " " << id;
  }
  detail = os.str();
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string path = argc > 1 ? argv[1] : EQP_DEFAULT_CONFIG;
  std::ifstream in(path);
  if (!in) {
    std::cerr << "cannot read " << path << "\n";
    return 2;
  }
  std::stringstream text;
  text << in.rdbuf();
  const SuiteConfig cfg = parse_config(text.str());

  const Report first = run_suites(cfg);
  const Report second = run_suites(cfg);

  auto suite = [](const char* s) { return [s](const CheckResult& c) { return c.suite == s; }; };
  auto one_of = [](std::vector<std::string> prefixes) {
    return [prefixes](const CheckResult& c) {
      for (const auto& p : prefixes)
        if (starts_with(c.id, p)) return true;
      return false;
    };
  };
  const std::vector<Criterion> criteria{
      {1, "Heisenberg mode relations as Fock matrices", suite("heisenberg"), 60.0},
      {2, "trigonometric exchange relations and the E+E- delta relation", suite("trig")},
      {3, "special functions: brute force, p -> 0 limit, triple product, c1 c2 c3 = 1", suite("special")},
      {4, "elliptic exchange relations, guard soundness and the e f delta relation", suite("elliptic")},
      {5, "critical level: l against reduced l, contractions, centrality, k = 1 control",
       one_of({"critical.l.canonical", "critical.contractions@", "critical.centrality.[",
               "control.critical.centrality"})},
      {6, "the W display and both Cartan displays",
       one_of({"critical.W-display", "critical.cartan.1", "critical.cartan.2"})},
  };

  bool all = true;
  for (const auto& c : criteria) {
    std::string detail;
    const bool ok = evaluate(first, c, detail);
    all = all && ok;
    std::cout << "criterion " << c.number << ": " << (ok ? "PASS" : "FAIL") << "  " << c.text << "  [" << detail
              << "]\n";
  }
  const std::string a = report_json(first).dump(2), b = report_json(second).dump(2);
  const bool same = a == b;
  all = all && same;
  std::cout << "criterion 7: " << (same ? "PASS" : "FAIL") << "  two runs give identical reports  [" << a.size()
            << " bytes, config " << first.config_hash << "]\n";
  return all ? 0 : 1;
}
