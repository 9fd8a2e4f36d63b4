#include "eqp/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <exception>
#include <functional>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

#include "eqp/fock.hpp"
#include "eqp/product_oracle.hpp"
#include "eqp/relations.hpp"
#include "eqp/special.hpp"

namespace eqp {

namespace {

std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

int parse_int(const std::string& key, const std::string& value) {
  try {
    size_t used = 0;
    const int v = std::stoi(value, &used);
    if (used == value.size()) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError({key + ": expected an integer, got '" + value + "'"});
}

std::vector<int> parse_int_list(const std::string& key, const std::string& value) {
  std::vector<int> out;
  for (const auto& item : split_list(value)) out.push_back(parse_int(key, item));
  if (out.empty()) throw ConfigError({key + ": expected a comma-separated list of integers"});
  return out;
}

std::string ints(const std::vector<int>& v) {
  std::vector<std::string> s;
  for (int x : v) s.push_back(std::to_string(x));
  return join(s, ", ");
}

std::string grid_str(int grid) { return Rat(grid, kGridPerQ).str(); }

std::string level_tag(int k, int r) { return "@k=" + std::to_string(k) + ",r=" + std::to_string(r); }

// ---------------------------------------------------------------------------
// Escalation: each check is rerun at a larger working order until it is
// either refuted on its certified window or certified up to its target.

struct Outcome {
  CheckResult res;
  int cert = kExact;  // grid units
  int target = 0;     // grid units
};
using Runner = std::function<std::vector<Outcome>(int cap_q)>;

struct Group {
  Runner run;
};

bool decided(const Outcome& o) { return o.res.error || !o.res.held || o.cert >= o.target; }

std::vector<int> slack_steps(int max_slack) {
  std::vector<int> steps{0};
  for (int s = 10; s < max_slack; s *= 2) steps.push_back(s);
  if (max_slack > 0) steps.push_back(max_slack);
  return steps;
}

void finalize(Outcome& o) {
  CheckResult& r = o.res;
  if (o.cert < kExact) r.q_certified = grid_str(o.cert);
  const bool certified = o.cert >= o.target;
  if (!r.error && r.held && !certified) {
    const std::string note = "certified only through q^" + grid_str(o.cert) + ", target q^" + grid_str(o.target);
    r.detail = r.detail.empty() ? note : r.detail + "; " + note;
  }
  if (r.negative_control)
    r.pass = !r.error && !r.held;
  else
    r.pass = !r.error && r.held && certified;
}

std::vector<CheckResult> escalate(const SuiteConfig& cfg, const Runner& run) {
  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();
  std::vector<Outcome> best;
  std::vector<double> times;
  for (int slack : slack_steps(cfg.max_slack)) {
    const int cap = cfg.qmax + slack;
    std::vector<Outcome> now;
    {
      ScopedThreadQmaxGrid scope(cap * kGridPerQ);
      now = run(cap);
    }
    const double elapsed = std::chrono::duration<double>(clock::now() - t0).count();
    for (auto& o : now) o.res.working_qmax = cap;
    if (best.empty()) {
      best = std::move(now);
      times.assign(best.size(), elapsed);
    } else {
      for (size_t i = 0; i < best.size() && i < now.size(); ++i)
        if (!decided(best[i])) {
          best[i] = std::move(now[i]);
          times[i] = elapsed;
        }
    }
    if (std::all_of(best.begin(), best.end(), decided)) break;
  }
  std::vector<CheckResult> out;
  for (size_t i = 0; i < best.size(); ++i) {
    finalize(best[i]);
    best[i].res.wall_seconds = times[i];
    out.push_back(std::move(best[i].res));
  }
  return out;
}

CheckResult base(const std::string& suite, const std::string& id, const std::string& relation, bool control) {
  CheckResult r;
  r.suite = suite;
  r.id = id;
  r.relation = relation;
  r.negative_control = control;
  return r;
}

Outcome error_outcome(CheckResult r, const std::exception& e) {
  r.error = true;
  r.held = false;
  r.detail = e.what();
  return Outcome{std::move(r), kExact, 0};
}

// Wraps a single-result runner so exceptions become error results.
Runner guarded(CheckResult proto, std::function<Outcome(int)> body) {
  return [proto, body](int cap) -> std::vector<Outcome> {
    try {
      return {body(cap)};
    } catch (const std::exception& e) {
      return {error_outcome(proto, e)};
    }
  };
}

// ---------------------------------------------------------------------------
// Conversions from the engine's reports.

Outcome from_exchange(CheckResult r, const ExchangeReport& rep, int target) {
  r.held = rep.pass;
  r.x_lo = rep.x_lo;
  r.x_hi = rep.x_hi;
  if (rep.first_mismatch) {
    FirstFailure f;
    f.x_power = rep.first_mismatch->x_power;
    f.q_power = grid_str(rep.first_mismatch->q_grid);
    f.lhs = rep.first_mismatch->lhs.str();
    f.rhs = rep.first_mismatch->rhs.str();
    f.where = rep.mismatch_key;
    r.first_failure = f;
  } else if (!rep.keys_match) {
    FirstFailure f;
    f.where = rep.mismatch_key;
    r.first_failure = f;
  }
  std::vector<std::string> notes{std::to_string(rep.terms) + " term pairs"};
  if (rep.guard_checked) notes.push_back(rep.guard_sound ? "guard+2 sound" : "guard+2 changed certified coefficients");
  r.detail = join(notes, "; ");
  return Outcome{std::move(r), rep.certified_prec, target};
}

Outcome from_oracle(CheckResult r, const OracleReport& o, int window, int target) {
  r.held = o.pass;
  r.compared = o.compared;
  r.x_lo = -window;
  r.x_hi = window;
  if (o.first_mismatch) {
    const FockMismatch& m = *o.first_mismatch;
    FirstFailure f;
    f.z_power = m.z_exp.str();
    f.w_power = m.w_exp.str();
    f.q_power = grid_str(m.q_grid);
    f.lhs = m.lhs.str();
    f.rhs = m.rhs.str();
    f.where = m.source + " -> " + m.target;
    r.first_failure = f;
  }
  r.detail = o.detail;
  return Outcome{std::move(r), o.certified_prec, target};
}

Outcome from_currents(CheckResult r, const CurrentComparison& c, int target) {
  r.held = c.equal;
  if (!c.equal) {
    FirstFailure f;
    f.where = c.detail.substr(0, 400);
    r.first_failure = f;
  }
  return Outcome{std::move(r), c.certified_prec, target};
}

Outcome from_window(CheckResult r, const WindowComparison& c, int lo, int hi, int target) {
  r.held = c.equal;
  r.x_lo = lo;
  r.x_hi = hi;
  if (c.first_mismatch) {
    FirstFailure f;
    f.x_power = c.first_mismatch->x_power;
    f.q_power = grid_str(c.first_mismatch->q_grid);
    f.lhs = c.first_mismatch->lhs.str();
    f.rhs = c.first_mismatch->rhs.str();
    r.first_failure = f;
  }
  return Outcome{std::move(r), c.certified_prec, target};
}

// ---------------------------------------------------------------------------
// Special functions.

constexpr int kBruteXOrder = 3;
constexpr int kBruteQOrder = 24;
constexpr int kFreePXOrder = 12;
constexpr int kSpecialTarget = kBruteQOrder * kGridPerQ;

// Compares x^0..x^xmax of s with the brute-force product up to q^qorder.
WindowComparison against_brute(const XSeries& s, const brute::Poly2& b, int xmax, int qorder) {
  XSeries theirs(0, xmax, Tail::zero(), Tail::unknown());
  for (int i = 0; i <= xmax; ++i) theirs.at(i) = b.coeff_series(i);
  XSeries ours = s.restricted(0, xmax);
  for (int i = 0; i <= xmax; ++i) ours.at(i) = ours.at(i).with_prec(std::min(ours.at(i).prec(), qorder * kGridPerQ));
  return compare_on(ours, theirs, 0, xmax);
}

// (t; t)_inf
QSeries euler_product(const QSeries& t) {
  QSeries acc(Rat(1)), tn = t;
  while (!tn.is_zero()) {
    acc = acc * (QSeries(Rat(1)) - tn);
    tn = tn * t;
  }
  return acc;
}

void special_groups(const SuiteConfig& cfg, std::vector<Group>& out) {
  const std::string S = "special";
  {
    CheckResult p = base(S, "special.f_q.brute", "f_q(x) against its product expansion to x^3, q^24", false);
    out.push_back({guarded(p, [p](int) {
      XSeries f = f_q_series(QSeries(Rat(1)), kBruteXOrder);
      brute::Poly2 b = brute::Poly2::one(kBruteXOrder, 0, kBruteQOrder);
      brute::multiply_pochhammer(b, 0, {4}, false);
      brute::multiply_pochhammer(b, 4, {4}, false);
      brute::multiply_pochhammer(b, 2, {4}, true);
      brute::multiply_pochhammer(b, 2, {4}, true);
      return from_window(p, against_brute(f, b, kBruteXOrder, kBruteQOrder), 0, kBruteXOrder, kSpecialTarget);
    })});
  }
  for (int k : cfg.levels) {
    const int r = cfg.r_for(k), rs = r - k;
    CheckResult p = base(S, "special.F_qp.brute" + level_tag(k, r),
                         "F_{q,p}(x) against its triple product expansion to x^3, q^24", false);
    p.level = k;
    p.r = r;
    out.push_back({guarded(p, [p, r, rs](int) {
      XSeries F = F_qp_series(QSeries(Rat(1)), r, rs, kBruteXOrder);
      brute::Poly2 b = brute::Poly2::one(kBruteXOrder, 0, kBruteQOrder);
      const std::vector<int> bases{4, 2 * r, 2 * rs};
      brute::multiply_pochhammer(b, 0, bases, false);
      brute::multiply_pochhammer(b, 4, bases, false);
      brute::multiply_pochhammer(b, 2, bases, true);
      brute::multiply_pochhammer(b, 2, bases, true);
      return from_window(p, against_brute(F, b, kBruteXOrder, kBruteQOrder), 0, kBruteXOrder, kSpecialTarget);
    })});
  }
  for (int k : cfg.levels) {
    CheckResult p = base(S, "special.F_qp.mod_p@k=" + std::to_string(k),
                         "F_{q,p}(x) with p free, p* = p q^-2k, reduces to f_q(x) mod p", false);
    p.level = k;
    out.push_back({guarded(p, [p, k](int) {
      PSeries F = F_qp_free_p(QSeries(Rat(1)), k, kFreePXOrder, 1);
      XSeries f = f_q_series(QSeries(Rat(1)), kFreePXOrder);
      return from_window(p, compare_on(F.layer(0), f, 0, kFreePXOrder), 0, kFreePXOrder, kSpecialTarget);
    })});
  }
  {
    CheckResult p = base(S, "special.triple_product",
                         "sum_m (-1)^m t^(m(m-1)/2) (c x)^m = (cx; t)(t/(cx); t)(t; t) at t = q^4, c = q", false);
    out.push_back({guarded(p, [p](int) {
      const QSeries t = qpow(Rat(4)), c = qpow(Rat(1));
      const int radius = 6, inner = radius - 2;
      XSeries sum = theta_series(t, c, radius);
      XSeries left = pochhammer_series({t}, 3 * radius, c);
      XSeries right = pochhammer_series({t}, 3 * radius, t * c.inverse()).reflected();
      XSeries product = xs_mul(left, right).scaled(euler_product(t));
      return from_window(p, compare_on(sum, product, -inner, inner), -inner, inner, kSpecialTarget);
    })});
  }
  for (int k : cfg.levels) {
    const int r = cfg.r_for(k), rs = r - k;
    CheckResult p = base(S, "special.c1c2c3" + level_tag(k, r), "c1 c2 c3 = 1", false);
    p.level = k;
    p.r = r;
    out.push_back({guarded(p, [p, r, rs](int) {
      IdentityReport rep = c1c2c3_identity_check(r, rs, 8);
      WindowComparison w;
      w.equal = rep.holds;
      w.first_mismatch = rep.first_mismatch;
      w.certified_prec = rep.certified_prec;
      return from_window(p, w, rep.x_lo, rep.x_hi, kSpecialTarget);
    })});
  }
}

// ---------------------------------------------------------------------------
// Exchange relations.

using CaseBuilder = std::vector<ExchangeCase> (*)(const RealizationConfig&, int, int);

void exchange_groups(const SuiteConfig& cfg, const std::string& suite, CaseBuilder build, int k, bool control,
                     std::vector<Group>& out) {
  const int r = cfg.r_for(k);
  const RealizationConfig rc{k, r, cfg.N};
  size_t count = 0;
  std::vector<std::pair<std::string, std::string>> names;
  {
    ScopedThreadQmaxGrid small(2 * kGridPerQ);
    for (const auto& c : build(rc, cfg.window, cfg.guard)) names.emplace_back(c.id, c.relation);
    count = names.size();
  }
  const int target = cfg.qmax * kGridPerQ;
  for (size_t i = 0; i < count; ++i) {
    // a perturbation of a relation that already fails detects nothing
    if (control && (names[i].first == "ell.k+k+" || names[i].first == "ell.k-k-")) continue;
    const std::string id = (control ? "control." : "") + names[i].first + (control ? ".prefactor" : "") +
                           level_tag(k, r);
    std::string relation = names[i].second;
    if (control) relation += ", with the right side multiplied by q^2";
    CheckResult p = base(control ? "negative-controls" : suite, id, relation, control);
    p.level = k;
    p.r = r;
    const int window = cfg.window, guard = cfg.guard;
    out.push_back({guarded(p, [=](int) {
      auto cases = build(rc, window, guard);
      ExchangeCase& c = cases[i];
      if (control) c.spec.prefactor = c.spec.prefactor * qpow(Rat(2));
      return from_exchange(p, verify_exchange_cleared(c.a, c.b, c.spec), target);
    })});
  }
}

// ---------------------------------------------------------------------------
// Fock-module checks.

std::string heisenberg_slug(const std::string& id) {
  static const std::map<std::string, std::string> slugs{{"[f_n, f_m]", "oscillators"},
                                                        {"[P_f, Q_f]", "zero-modes"},
                                                        {"[H_n, H_m]", "H-H"},
                                                        {"[H_n, E+(z)]", "H-E+"},
                                                        {"[H_n, E-(z)]", "H-E-"}};
  auto it = slugs.find(id);
  return it == slugs.end() ? id : it->second;
}

const char* heisenberg_relation(const std::string& id) {
  if (id == "[f_n, f_m]") return "[f_n, f_m] = pairing(f, n) delta_{n+m,0} for f in {a, b, c}";
  if (id == "[P_f, Q_f]") return "[P_a, Q_a] = 2(k+2), [P_b, Q_b] = -1, [P_c, Q_c] = 1";
  if (id == "[H_n, H_m]") return "[H_n, H_m] = [2n][kn]/n delta_{n+m,0}";
  if (id == "[H_n, E+(z)]") return "[H_n, E+(z)] = ([2n]/n) q^(-k|n|/2) z^n E+(z)";
  if (id == "[H_n, E-(z)]") return "[H_n, E-(z)] = -([2n]/n) q^(k|n|/2) z^n E-(z)";
  return "";
}

void heisenberg_groups(const SuiteConfig& cfg, std::vector<Group>& out) {
  const int target = cfg.qmax * kGridPerQ;
  for (int k : cfg.levels) {
    const RealizationConfig rc{k, cfg.r_for(k), cfg.N};
    const int D = cfg.D, nmax = cfg.heisenberg_nmax;
    out.push_back({[=](int) {
      std::vector<Outcome> res;
      try {
        for (const auto& o : check_heisenberg_matrices(rc, D, nmax)) {
          CheckResult p = base("heisenberg", "heisenberg." + heisenberg_slug(o.id) + "@k=" + std::to_string(k),
                               heisenberg_relation(o.id), false);
          p.level = k;
          Outcome x = from_oracle(p, o, nmax, target);
          res.push_back(std::move(x));
        }
      } catch (const std::exception& e) {
        CheckResult p = base("heisenberg", "heisenberg@k=" + std::to_string(k), "mode relations", false);
        p.level = k;
        res.push_back(error_outcome(p, e));
      }
      return res;
    }});
  }
}

void delta_group(const SuiteConfig& cfg, DeltaRelation which, int k, const Weights& weights, bool control,
                 std::vector<Group>& out) {
  const int r = cfg.r_for(k);
  const RealizationConfig rc{k, r, cfg.N};
  const bool ee = which == DeltaRelation::ee;
  std::string id = ee ? "trig.E+E-.delta" : "ell.ef.delta";
  std::string relation = ee ? "[E+(z), E-(w)] = 1/((q - 1/q) z w) (delta(q^k w/z) K-(q^(k/2+2) w)^-1 K-(q^(k/2) w)^-1 "
                              "- delta(q^-k w/z) K+(q^(-k/2+2) w)^-1 K+(q^(-k/2) w)^-1)"
                            : "[e(z), f(w)] = 1/((q - 1/q) z w) (delta(q^-k z/w) Psi+(q^(k/2) w) - delta(q^k z/w) "
                              "Psi-(q^(-k/2) w))";
  if (!weights[0].is_zero()) id += ".lambda_a=" + weights[0].str();
  if (control) {
    id = "control." + id + ".no-prefactor";
    relation += ", with 1/(q - 1/q) dropped";
  }
  id += ee ? "@k=" + std::to_string(k) : level_tag(k, r);
  CheckResult p = base(control ? "negative-controls" : (ee ? "trig" : "elliptic"), id, relation, control);
  p.level = k;
  if (!ee) p.r = r;
  const int D = cfg.D, W = cfg.fock_window, target = cfg.qmax * kGridPerQ;
  out.push_back({guarded(p, [=](int) {
    return from_oracle(p, check_delta_relation(which, rc, D, W, weights, control), W, target);
  })});
}

void critical_groups(const SuiteConfig& cfg, std::vector<Group>& out) {
  const int k = -2, r = cfg.r_for(-2);
  const RealizationConfig rc{k, r, cfg.N};
  const int target = cfg.qmax * kGridPerQ;
  const std::string S = "critical", tag = level_tag(k, r);
  auto canonical = [&](const std::string& id, const std::string& relation,
                       std::function<CurrentComparison()> cmp) {
    CheckResult p = base(S, id + tag, relation, false);
    p.level = k;
    p.r = r;
    out.push_back({guarded(p, [p, cmp, target](int) { return from_currents(p, cmp(), target); })});
  };
  canonical("critical.l.canonical",
            "l(z) = q^-1 :k+(zq) k-(zq^-1)^-1: + q :k-(zq) k+(zq^3)^-1: + k+(zq) :e f: k-(zq) equals "
            "q^-1 A-(zq) A+(zq)^-1 + q A-(zq^-1)^-1 A+(zq^-1)",
            [rc] { return compare_currents(build_l(rc), build_l_reduced(rc)); });
  canonical("critical.W-display",
            "k+(zq) :e f: k-(zq) equals the four-term W1/W2 expression",
            [rc] { return compare_currents(build_kefk(rc), build_W_display(rc)); });
  canonical("critical.cartan.1",
            "q^-1 :k+(zq) k-(zq^-1)^-1: = q^-1 W1(z/q) A-(z/q)^-1 A+(z/q) W2(z/q)^-1 e^(-b-(z)) e^(b+(z/q^2))",
            [rc] { return compare_currents(build_l_cartan(1, rc), build_cartan_display(1, rc)); });
  canonical("critical.cartan.2",
            "q :k-(zq) k+(zq^3)^-1: = q W1(qz)^-1 A-(zq) A+(zq)^-1 W2(qz) e^(b-(zq^2)) e^(-b+(z))",
            [rc] { return compare_currents(build_l_cartan(2, rc), build_cartan_display(2, rc)); });

  // engine half: every contraction of l against k+-, e, f vanishes
  for (bool reduced : {false, true}) {
    CheckResult p = base(S, std::string("critical.contractions") + (reduced ? ".reduced" : "") + tag,
                         std::string("every Wick contraction between ") + (reduced ? "the two-term l" : "l") +
                             " and k+, k-, e, f (both orders) is trivial",
                         false);
    p.level = k;
    p.r = r;
    out.push_back({guarded(p, [p, rc, reduced](int) {
      const Current l = reduced ? build_l_reduced(rc) : build_l(rc);
      CheckResult res = p;
      res.held = true;
      size_t nontrivial = 0, total = 0;
      for (EllipticName name : {EllipticName::k_plus, EllipticName::k_minus, EllipticName::e, EllipticName::f}) {
        const Current x = build_elliptic(name, rc);
        for (const auto& lt : l.terms())
          for (const auto& xt : x.terms())
            for (bool swap : {false, true}) {
              ++total;
              const Contraction c = swap ? contract(xt.form, lt.form, rc.k) : contract(lt.form, xt.form, rc.k);
              if (c.trivial()) continue;
              if (nontrivial++ == 0) {
                FirstFailure f;
                f.where = std::string(swap ? elliptic_name(name) + " against l" : "l against " + elliptic_name(name)) +
                          ": q^" + c.q_exp.str() + " z^" + c.var_exp.str();
                res.first_failure = f;
              }
            }
      }
      res.held = nontrivial == 0;
      res.compared = static_cast<long long>(total);
      res.detail = std::to_string(nontrivial) + " of " + std::to_string(total) + " contractions nontrivial";
      return Outcome{res, kExact, 0};
    })});
  }

  // Fock half: [l_m, X_n] = 0 as matrices
  for (bool reduced : {false, true}) {
    const int D = cfg.D, W = cfg.fock_window;
    out.push_back({[=](int) {
      std::vector<Outcome> res;
      const std::string stem = std::string("critical.centrality") + (reduced ? ".reduced" : "");
      try {
        for (const auto& o : check_centrality_matrix(rc, D, W, reduced)) {
          CheckResult p = base(S, stem + "." + o.id + tag,
                               std::string("[l_m, X_n] = 0 on the degree <= D module with ") +
                                   (reduced ? "the two-term l" : "l"),
                               false);
          p.level = k;
          p.r = r;
          res.push_back(from_oracle(p, o, W, target));
        }
      } catch (const std::exception& e) {
        CheckResult p = base(S, stem + tag, "[l_m, X_n] = 0", false);
        res.push_back(error_outcome(p, e));
      }
      return res;
    }});
  }
}

void oracle_cross_groups(const SuiteConfig& cfg, int k, const QSeries& engine_scale, bool control,
                         std::vector<Group>& out) {
  const int r = cfg.r_for(k);
  const RealizationConfig rc{k, r, cfg.N};
  const int D = cfg.D, W = cfg.fock_window, target = cfg.qmax * kGridPerQ;
  struct Pair {
    const char* id;
    std::function<Current(const RealizationConfig&)> x, y;
  };
  auto trig = [](TrigName n) { return [n](const RealizationConfig& c) { return build_trig(n, c); }; };
  auto ell = [](EllipticName n) { return [n](const RealizationConfig& c) { return build_elliptic(n, c); }; };
  std::vector<Pair> pairs{{"E+E-", trig(TrigName::E_plus), trig(TrigName::E_minus)},
                          {"E-E+", trig(TrigName::E_minus), trig(TrigName::E_plus)},
                          {"K-K+", trig(TrigName::K_minus), trig(TrigName::K_plus)},
                          {"ef", ell(EllipticName::e), ell(EllipticName::f)},
                          {"k-k+", ell(EllipticName::k_minus), ell(EllipticName::k_plus)}};
  if (control) pairs.resize(1);
  for (const auto& pr : pairs) {
    std::string id = std::string("oracle-cross.") + pr.id + level_tag(k, r);
    std::string relation =
        std::string("<vac| X(z) Y(w) |vac> from the Fock module equals the engine's contraction scalar for ") + pr.id;
    if (control) {
      id = "control." + id + ".scaled";
      relation += ", with the engine side multiplied by q^2";
    }
    CheckResult p = base(control ? "negative-controls" : "oracle-cross", id, relation, control);
    p.level = k;
    p.r = r;
    out.push_back({guarded(p, [=](int) {
      return from_oracle(p, vacuum_cross_check(pr.id, pr.x(rc), pr.y(rc), D, W, engine_scale), W, target);
    })});
  }
}

void control_groups(const SuiteConfig& cfg, std::vector<Group>& out) {
  const int k = cfg.levels.front();
  const int target = cfg.qmax * kGridPerQ;
  {
    const RealizationConfig rc{k, cfg.r_for(k), cfg.N};
    const int D = cfg.D, nmax = cfg.heisenberg_nmax;
    CheckResult p = base("negative-controls", "control.heisenberg.H-E.literal@k=" + std::to_string(k),
                         "[H_n, E+-(z)] = +-([2n]/n) q^(-+kn/2) z^n E+-(z) with n in place of |n|", true);
    p.level = k;
    out.push_back({guarded(p, [=](int) {
      Outcome merged{p, kExact, target};
      merged.res.held = true;
      for (const auto& o : check_heisenberg_matrices(rc, D, nmax, true)) {
        if (o.id.rfind("[H_n, E", 0) != 0) continue;
        Outcome x = from_oracle(p, o, nmax, target);
        merged.cert = std::min(merged.cert, x.cert);
        merged.res.compared += x.res.compared;
        if (!x.res.held && merged.res.held) {
          merged.res.held = false;
          merged.res.first_failure = x.res.first_failure;
          merged.res.detail = o.id;
        }
      }
      return merged;
    })});
  }
  exchange_groups(cfg, "trig", trig_exchange_cases, k, true, out);
  delta_group(cfg, DeltaRelation::ee, k, Weights{}, true, out);
  exchange_groups(cfg, "elliptic", elliptic_exchange_cases, k, true, out);
  delta_group(cfg, DeltaRelation::efp, k, Weights{}, true, out);
  {
    const int r = cfg.r_for(k), rs = r - k;
    CheckResult p = base("negative-controls", "control.special.c1c2c3.perturbed" + level_tag(k, r),
                         "c1 c2 c3 = 1 with the argument of c2's numerator shifted by q^2", true);
    p.level = k;
    p.r = r;
    out.push_back({guarded(p, [p, r, rs](int) {
      IdentityReport rep = c1c2c3_identity_check(r, rs, 8, true);
      WindowComparison w;
      w.equal = rep.holds;
      w.first_mismatch = rep.first_mismatch;
      w.certified_prec = rep.certified_prec;
      return from_window(p, w, rep.x_lo, rep.x_hi, kSpecialTarget);
    })});
  }
  {
    // the two-term l at a non-critical level must not be central
    const RealizationConfig rc{1, cfg.r_for(-2) > 1 ? cfg.r_for(-2) : 2, cfg.N};
    const int D = cfg.D, W = cfg.fock_window;
    CheckResult p = base("negative-controls", "control.critical.centrality" + level_tag(1, rc.r),
                         "[l_m, X_n] = 0 for the two-term l at k = 1", true);
    p.level = 1;
    p.r = rc.r;
    out.push_back({guarded(p, [=](int) {
      Outcome merged{p, kExact, target};
      merged.res.held = true;
      for (const auto& o : check_centrality_matrix(rc, D, W, true)) {
        Outcome x = from_oracle(p, o, W, target);
        merged.cert = std::min(merged.cert, x.cert);
        merged.res.compared += x.res.compared;
        if (!x.res.held && merged.res.held) {
          merged.res.held = false;
          merged.res.first_failure = x.res.first_failure;
          merged.res.detail = o.id;
        }
      }
      return merged;
    })});
  }
  oracle_cross_groups(cfg, k, qpow(Rat(2)), true, out);
}

std::vector<Group> plan(const SuiteConfig& cfg) {
  std::vector<Group> out;
  const Weights rerun{Rat(cfg.rerun_weight), Rat(0), Rat(0)};
  if (cfg.wants("heisenberg")) heisenberg_groups(cfg, out);
  if (cfg.wants("trig"))
    for (int k : cfg.levels) {
      exchange_groups(cfg, "trig", trig_exchange_cases, k, false, out);
      delta_group(cfg, DeltaRelation::ee, k, Weights{}, false, out);
      if (cfg.rerun_weight != 0 && k == cfg.levels.front()) delta_group(cfg, DeltaRelation::ee, k, rerun, false, out);
    }
  if (cfg.wants("special")) special_groups(cfg, out);
  if (cfg.wants("elliptic"))
    for (int k : cfg.levels) {
      exchange_groups(cfg, "elliptic", elliptic_exchange_cases, k, false, out);
      delta_group(cfg, DeltaRelation::efp, k, Weights{}, false, out);
      if (cfg.rerun_weight != 0 && k == cfg.levels.front())
        delta_group(cfg, DeltaRelation::efp, k, rerun, false, out);
    }
  if (cfg.wants("critical")) critical_groups(cfg, out);
  if (cfg.wants("oracle-cross"))
    for (int k : cfg.levels) oracle_cross_groups(cfg, k, QSeries(Rat(1)), false, out);
  if (cfg.wants("negative-controls")) control_groups(cfg, out);
  return out;
}

nlohmann::json opt_json(const std::optional<std::string>& s) { return s ? nlohmann::json(*s) : nlohmann::json(); }
nlohmann::json opt_json(const std::optional<int>& s) { return s ? nlohmann::json(*s) : nlohmann::json(); }

}  // namespace

// ---------------------------------------------------------------------------

ConfigError::ConfigError(std::vector<std::string> f)
    : std::runtime_error("invalid configuration: " + join(f, "; ")), fields(std::move(f)) {}

int SuiteConfig::r_for(int k) const {
  if (r.size() == 1) return r.front();
  for (size_t i = 0; i < levels.size() && i < r.size(); ++i)
    if (levels[i] == k) return r[i];
  return r.front();
}

bool SuiteConfig::wants(const std::string& suite) const {
  return std::find(suites.begin(), suites.end(), suite) != suites.end();
}

void SuiteConfig::validate() const {
  std::vector<std::string> bad;
  if (levels.empty()) bad.push_back("levels: at least one level is required");
  if (r.empty()) bad.push_back("r: at least one value is required");
  if (r.size() != 1 && r.size() != levels.size())
    bad.push_back("r: give one value or one per level (" + std::to_string(levels.size()) + ")");
  if (!r.empty())
    for (int k : levels) {
      const int rk = r_for(k);
      if (rk < 1) bad.push_back("r: must be positive at k = " + std::to_string(k));
      if (rk - k <= 0)
        bad.push_back("r: r - k must be positive, got r = " + std::to_string(rk) + " at k = " + std::to_string(k));
    }
  if (qmax < 1) bad.push_back("qmax: must be at least 1");
  if (window < 1) bad.push_back("window: must be at least 1");
  if (guard < 0) bad.push_back("guard: must be non-negative");
  if (N < window) bad.push_back("N: must be at least the window radius " + std::to_string(window));
  if (D < 2) bad.push_back("D: must be at least 2");
  if (fock_window < 1 || fock_window > D) bad.push_back("fock_window: must lie in [1, D]");
  if (heisenberg_nmax < 1 || heisenberg_nmax > D) bad.push_back("heisenberg_nmax: must lie in [1, D]");
  if (max_slack < 0) bad.push_back("max_slack: must be non-negative");
  if (suites.empty()) bad.push_back("suites: at least one suite is required");
  for (const auto& s : suites)
    if (std::find(all_suites().begin(), all_suites().end(), s) == all_suites().end())
      bad.push_back("suites: unknown suite '" + s + "' (known: " + join(all_suites(), ", ") + ")");
  if (wants("critical") && std::find(levels.begin(), levels.end(), -2) == levels.end())
    bad.push_back("levels: the critical suite demands k = -2, got levels " + ints(levels));
  if (!bad.empty()) throw ConfigError(bad);
}

void apply_setting(SuiteConfig& cfg, const std::string& key, const std::string& raw) {
  const std::string value = trim(raw);
  if (key == "levels") cfg.levels = parse_int_list(key, value);
  else if (key == "r") cfg.r = parse_int_list(key, value);
  else if (key == "qmax") cfg.qmax = parse_int(key, value);
  else if (key == "window") cfg.window = parse_int(key, value);
  else if (key == "guard") cfg.guard = parse_int(key, value);
  else if (key == "N") cfg.N = parse_int(key, value);
  else if (key == "D") cfg.D = parse_int(key, value);
  else if (key == "fock_window") cfg.fock_window = parse_int(key, value);
  else if (key == "heisenberg_nmax") cfg.heisenberg_nmax = parse_int(key, value);
  else if (key == "max_slack") cfg.max_slack = parse_int(key, value);
  else if (key == "rerun_weight") cfg.rerun_weight = parse_int(key, value);
  else if (key == "suites") cfg.suites = split_list(value);
  else if (key == "output") cfg.output = value;
  else throw ConfigError({key + ": unknown key"});
}

SuiteConfig parse_config(const std::string& text) {
  SuiteConfig cfg;
  std::vector<std::string> bad;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      bad.push_back("line " + std::to_string(lineno) + ": expected key = value");
      continue;
    }
    try {
      apply_setting(cfg, trim(line.substr(0, eq)), line.substr(eq + 1));
    } catch (const ConfigError& e) {
      for (const auto& f : e.fields) bad.push_back("line " + std::to_string(lineno) + ": " + f);
    }
  }
  if (!bad.empty()) throw ConfigError(bad);
  return cfg;
}

std::string canonical_config(const SuiteConfig& cfg) {
  std::ostringstream os;
  os << "levels = " << ints(cfg.levels) << "\n"
     << "r = " << ints(cfg.r) << "\n"
     << "qmax = " << cfg.qmax << "\n"
     << "window = " << cfg.window << "\n"
     << "guard = " << cfg.guard << "\n"
     << "N = " << cfg.N << "\n"
     << "D = " << cfg.D << "\n"
     << "fock_window = " << cfg.fock_window << "\n"
     << "heisenberg_nmax = " << cfg.heisenberg_nmax << "\n"
     << "max_slack = " << cfg.max_slack << "\n"
     << "rerun_weight = " << cfg.rerun_weight << "\n"
     << "suites = " << join(cfg.suites, ", ") << "\n";
  return os.str();
}

std::string config_hash(const SuiteConfig& cfg) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical_config(cfg)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

int Report::exit_code() const {
  for (const auto& c : checks)
    if (!c.pass) return 1;
  return 0;
}

Report run_suites(const SuiteConfig& cfg, bool parallel) {
  cfg.validate();
  const std::vector<Group> groups = plan(cfg);
  std::vector<std::vector<CheckResult>> results(groups.size());
  const long long n = static_cast<long long>(groups.size());
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (long long i = 0; i < n; ++i) results[static_cast<size_t>(i)] = escalate(cfg, groups[static_cast<size_t>(i)].run);
  Report rep;
  rep.config_text = canonical_config(cfg);
  rep.config_hash = config_hash(cfg);
  for (auto& part : results)
    for (auto& c : part) rep.checks.push_back(std::move(c));
  return rep;
}

nlohmann::json report_json(const Report& report) {
  using nlohmann::json;
  json checks = json::array(), relations = json::array();
  int passed = 0, failed = 0, controls = 0, detected = 0;
  for (const auto& c : report.checks) {
    json f;
    if (c.first_failure) {
      const FirstFailure& ff = *c.first_failure;
      f = json{{"x_power", opt_json(ff.x_power)}, {"z_power", opt_json(ff.z_power)}, {"w_power", opt_json(ff.w_power)},
               {"q_power", opt_json(ff.q_power)}, {"lhs", ff.lhs},  {"rhs", ff.rhs},
               {"where", ff.where}};
    }
    json window;
    if (c.x_lo && c.x_hi) window = json::array({*c.x_lo, *c.x_hi});
    checks.push_back(json{{"id", c.id},
                          {"suite", c.suite},
                          {"relation", c.relation},
                          {"level", opt_json(c.level)},
                          {"r", opt_json(c.r)},
                          {"negative_control", c.negative_control},
                          {"held", c.held},
                          {"pass", c.pass},
                          {"error", c.error},
                          {"first_failure", f},
                          {"certified", json{{"x_window", window}, {"q_order", c.q_certified ? *c.q_certified : "exact"}}},
                          {"compared", c.compared},
                          {"working_qmax", c.working_qmax},
                          {"detail", c.detail}});
    relations.push_back(c.id);
    (c.pass ? passed : failed) += 1;
    if (c.negative_control) {
      ++controls;
      if (c.pass) ++detected;
    }
  }
  std::vector<std::string> lines;
  std::istringstream in(report.config_text);
  for (std::string l; std::getline(in, l);) lines.push_back(l);
  return json{{"schema", "eqp-verify-report/1"},
              {"config_hash", report.config_hash},
              {"config", lines},
              {"relations", relations},
              {"checks", checks},
              {"summary", json{{"checks", report.checks.size()},
                               {"passed", passed},
                               {"failed", failed},
                               {"negative_controls", controls},
                               {"controls_detected", detected},
                               {"exit_code", report.exit_code()}}}};
}

nlohmann::json timings_json(const Report& report) {
  nlohmann::json t = nlohmann::json::object();
  for (const auto& c : report.checks) t[c.id] = c.wall_seconds;
  return nlohmann::json{{"config_hash", report.config_hash}, {"wall_seconds", t}};
}

std::string summary_text(const Report& report) {
  std::ostringstream os;
  int failed = 0;
  for (const auto& c : report.checks) {
    if (!c.pass) ++failed;
    os << (c.pass ? "PASS " : "FAIL ") << (c.negative_control ? "[control] " : "") << c.id;
    os << "  (cert q^" << (c.q_certified ? *c.q_certified : "exact") << ", Q=" << c.working_qmax << ", "
       << std::fixed << std::setprecision(2) << c.wall_seconds << "s)";
    if (c.first_failure) {
      const FirstFailure& f = *c.first_failure;
      os << "  first failure:";
      if (f.x_power) os << " x^" << *f.x_power;
      if (f.z_power) os << " z^" << *f.z_power << " w^" << *f.w_power;
      if (f.q_power) os << " q^" << *f.q_power << " " << f.lhs << " vs " << f.rhs;
      if (!f.where.empty()) os << " [" << f.where.substr(0, 120) << "]";
    }
    if (c.error || (!c.pass && !c.first_failure)) os << "  " << c.detail.substr(0, 200);
    os << "\n";
  }
  os << report.checks.size() << " checks, " << failed << " failed, config " << report.config_hash << "\n";
  return os.str();
}

}  // namespace eqp
