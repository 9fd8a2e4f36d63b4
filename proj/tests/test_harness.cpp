#include <gtest/gtest.h>

#include <cstdint>
#include <cstdio>

#include "eqp/harness.hpp"

using namespace eqp;

namespace {

std::string fnv1a(const std::string& s) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

bool mentions(const ConfigError& e, const std::string& needle) {
  for (const auto& f : e.fields)
    if (f.find(needle) != std::string::npos) return true;
  return false;
}

SuiteConfig small_heisenberg() {
  return parse_config("levels = 1\nr = 3\nD = 2\nfock_window = 1\nheisenberg_nmax = 1\nsuites = heisenberg\n");
}

}  // namespace

TEST(Config, DefaultsMatchTheShippedFile) {
  SuiteConfig d;
  SuiteConfig f = parse_config(
      "levels = 1, -2\nr = 3, 4\nqmax = 30\nwindow = 8\nguard = 2\nN = 20\nD = 4\nfock_window = 4\n"
      "heisenberg_nmax = 3\nmax_slack = 80\nrerun_weight = 1\n"
      "suites = heisenberg, trig, special, elliptic, critical, oracle-cross, negative-controls\n");
  EXPECT_EQ(canonical_config(d), canonical_config(f));
  EXPECT_NO_THROW(d.validate());
}

TEST(Config, CommentsBlankLinesAndWhitespace) {
  SuiteConfig c = parse_config("# header\n\n  qmax=12   # trailing\nlevels =  -2 \nsuites = critical\n");
  EXPECT_EQ(c.qmax, 12);
  EXPECT_EQ(c.levels, std::vector<int>{-2});
  EXPECT_EQ(c.suites, std::vector<std::string>{"critical"});
}

TEST(Config, PerLevelR) {
  SuiteConfig c;
  EXPECT_EQ(c.r_for(1), 3);
  EXPECT_EQ(c.r_for(-2), 4);
  apply_setting(c, "r", "5");
  EXPECT_EQ(c.r_for(1), 5);
  EXPECT_EQ(c.r_for(-2), 5);
}

TEST(Config, MalformedInputListsEveryField) {
  try {
    parse_config("qmax = ten\nbogus = 1\nno equals sign\n");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.fields.size(), 3u);
    EXPECT_TRUE(mentions(e, "qmax"));
    EXPECT_TRUE(mentions(e, "bogus"));
    EXPECT_TRUE(mentions(e, "line 3"));
  }
}

TEST(Config, InvariantsAreValidated) {
  SuiteConfig c;
  c.r = {1, 4};  // r - k = 0 at k = 1
  c.fock_window = 9;
  c.suites = {"trig", "nope"};
  try {
    c.validate();
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_TRUE(mentions(e, "r - k"));
    EXPECT_TRUE(mentions(e, "fock_window"));
    EXPECT_TRUE(mentions(e, "nope"));
  }
}

TEST(Config, CriticalSuiteNeedsCriticalLevel) {
  SuiteConfig c;
  c.levels = {1};
  c.r = {3};
  EXPECT_THROW(c.validate(), ConfigError);
  c.suites = {"trig"};
  EXPECT_NO_THROW(c.validate());
  EXPECT_THROW(run_suites(SuiteConfig{.levels = {1}, .r = {3}}), ConfigError);
}

TEST(Config, HashIsFnv1aOfCanonicalText) {
  SuiteConfig c;
  EXPECT_EQ(config_hash(c), fnv1a(canonical_config(c)));
  EXPECT_EQ(fnv1a(""), "cbf29ce484222325");
  SuiteConfig d = c;
  d.output = "elsewhere.json";
  EXPECT_EQ(config_hash(c), config_hash(d));
  d.qmax = 31;
  EXPECT_NE(config_hash(c), config_hash(d));
}

TEST(Report, SchemaAndDeterminism) {
  const SuiteConfig cfg = small_heisenberg();
  const Report a = run_suites(cfg, true), b = run_suites(cfg, false);
  const nlohmann::json ja = report_json(a), jb = report_json(b);
  EXPECT_EQ(ja.dump(), jb.dump());
  EXPECT_EQ(ja["schema"], "eqp-verify-report/1");
  EXPECT_EQ(ja["config_hash"], config_hash(cfg));
  ASSERT_TRUE(ja["checks"].is_array());
  ASSERT_EQ(ja["checks"].size(), 5u);
  for (const auto& c : ja["checks"]) {
    for (const char* key : {"id", "suite", "relation", "level", "r", "negative_control", "held", "pass", "error",
                            "first_failure", "certified", "compared", "working_qmax", "detail"})
      EXPECT_TRUE(c.contains(key)) << key;
    EXPECT_TRUE(c["certified"].contains("x_window"));
    EXPECT_TRUE(c["certified"].contains("q_order"));
    EXPECT_FALSE(c.contains("wall_seconds"));
  }
  EXPECT_EQ(ja["summary"]["checks"], 5);
  EXPECT_EQ(ja["summary"]["exit_code"], a.exit_code());
  EXPECT_EQ(a.exit_code(), 0);
  const nlohmann::json t = timings_json(a);
  EXPECT_EQ(t["config_hash"], config_hash(cfg));
  EXPECT_EQ(t["wall_seconds"].size(), 5u);
}

TEST(Report, ControlsPassWhenDetected) {
  SuiteConfig cfg = small_heisenberg();
  cfg.suites = {"negative-controls"};
  const Report rep = run_suites(cfg);
  ASSERT_FALSE(rep.checks.empty());
  for (const auto& c : rep.checks) {
    EXPECT_TRUE(c.negative_control) << c.id;
    EXPECT_EQ(c.pass, !c.held && !c.error) << c.id;
  }
}
