#pragma once

// Verification suites, their configuration and the structured report.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace eqp {

// A configuration problem; `fields` lists one diagnostic per offending key.
struct ConfigError : std::runtime_error {
  explicit ConfigError(std::vector<std::string> fields);
  std::vector<std::string> fields;
};

inline const std::vector<std::string>& all_suites() {
  static const std::vector<std::string> names{"heisenberg",   "trig",         "special",          "elliptic",
                                              "critical",     "oracle-cross", "negative-controls"};
  return names;
}

struct SuiteConfig {
  std::vector<int> levels{1, -2};
  // One value for every level, or one per level in the same order.
  std::vector<int> r{3, 4};
  int qmax = 30;            // certification target, powers of q
  int window = 8;           // x-window radius of the exchange checks
  int guard = 2;            // theta summation radius beyond the window
  int N = 20;               // mode cutoff
  int D = 4;                // Fock degree cutoff
  int fock_window = 4;      // monomial radius of the Fock checks
  int heisenberg_nmax = 3;  // |n|, |m| range of the mode checks
  int max_slack = 80;       // largest extra working order, powers of q
  int rerun_weight = 1;     // lambda_a of the weight re-run (0 disables it)
  std::vector<std::string> suites = all_suites();
  std::string output;  // report path; empty for none

  int r_for(int k) const;
  // Throws ConfigError listing every violated invariant.
  void validate() const;
  bool wants(const std::string& suite) const;
};

// Flat `key = value` text; `#` starts a comment.  Unknown keys and malformed
// values raise ConfigError.
SuiteConfig parse_config(const std::string& text);
// Applies one key/value pair with the same syntax as the file.
void apply_setting(SuiteConfig& cfg, const std::string& key, const std::string& value);
// Canonical `key = value` lines of everything that affects results (the
// output path excluded).
std::string canonical_config(const SuiteConfig& cfg);
// 64-bit FNV-1a of the canonical text, as 16 hex digits.
std::string config_hash(const SuiteConfig& cfg);

struct FirstFailure {
  std::optional<int> x_power;
  std::optional<std::string> z_power, w_power;  // Fock monomials
  std::optional<std::string> q_power;           // rational, in powers of q
  std::string lhs, rhs;
  std::string where;  // term key or states involved
};

struct CheckResult {
  std::string suite, id, relation;
  std::optional<int> level, r;
  bool negative_control = false;
  bool held = false;  // the relation held on the certified window
  bool pass = false;  // held, or for a control: the perturbation was detected
  bool error = false;
  std::optional<FirstFailure> first_failure;
  // certified windows
  std::optional<int> x_lo, x_hi;
  std::optional<std::string> q_certified;  // powers of q; absent when exact
  long long compared = 0;
  int working_qmax = 0;
  std::string detail;
  double wall_seconds = 0;  // kept out of the deterministic report
};

struct Report {
  std::string config_text, config_hash;
  std::vector<CheckResult> checks;
  int exit_code() const;
};

Report run_suites(const SuiteConfig& cfg, bool parallel = true);

// The deterministic report (no timings).
nlohmann::json report_json(const Report& report);
// Wall times per check id.
nlohmann::json timings_json(const Report& report);
// One line per check plus totals.
std::string summary_text(const Report& report);

}  // namespace eqp
