#include "eqp/heisenberg.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <map>
#include <optional>

namespace eqp {

const char* family_name(Family f) {
  switch (f) {
    case Family::a: return "a";
    case Family::b: return "b";
    case Family::c: return "c";
  }
  return "?";
}

ModeId ModeId::osc(Family f, int n) {
  if (n == 0) throw std::invalid_argument("oscillator index must be nonzero");
  return {f, Kind::osc, n};
}

std::string ModeId::str() const {
  std::string s = family_name(family);
  switch (kind) {
    case Kind::osc: return s + "_" + std::to_string(n);
    case Kind::P: return "P_" + s;
    case Kind::Q: return "Q_" + s;
  }
  return s;
}

QSeries oscillator_pairing(Family f, int m, int k) {
  if (m <= 0) throw std::invalid_argument("pairing index must be positive");
  QSeries qm = q_integer(m);
  switch (f) {
    case Family::a: return (q_integer(static_cast<long long>(k + 2) * m) * q_integer(2LL * m)).scaled(Rat(1, m));
    case Family::b: return -(qm * qm).scaled(Rat(1, m));
    case Family::c: return (qm * qm).scaled(Rat(1, m));
  }
  return QSeries();
}

Rat zero_mode_pairing(Family f, int k) {
  switch (f) {
    case Family::a: return Rat(2LL * (k + 2));
    case Family::b: return Rat(-1);
    case Family::c: return Rat(1);
  }
  return Rat(0);
}

QSeries commutator_value(const ModeId& x, const ModeId& y, int k) {
  if (x.family != y.family) return QSeries();
  using K = ModeId::Kind;
  if (x.kind == K::osc && y.kind == K::osc) {
    if (x.n + y.n != 0) return QSeries();
    return x.n > 0 ? oscillator_pairing(x.family, x.n, k) : -oscillator_pairing(x.family, y.n, k);
  }
  if (x.kind == K::P && y.kind == K::Q) return QSeries(zero_mode_pairing(x.family, k));
  if (x.kind == K::Q && y.kind == K::P) return QSeries(-zero_mode_pairing(x.family, k));
  return QSeries();
}

ValBound bound_min(const ValBound& x, const ValBound& y) {
  if (x.none) return y;
  if (y.none) return x;
  return ValBound::linear(std::min(x.slope, y.slope), std::min(x.offset, y.offset));
}

QSeries ModeRule::eval(int m) const { return sum_value({*this}, m); }

ValBound ModeRule::bound() const {
  if (c.is_zero()) return ValBound::empty();
  Rat slope = sigma, offset = Rat(-qq);
  for (const auto& [a, e] : qints) {
    if (a == 0 && e > 0) return ValBound::empty();
    // v([a m]^e) = -e (|a| m - 1)
    slope -= Rat(static_cast<long long>(e) * std::llabs(a));
    offset += Rat(e);
  }
  if (!taus.empty()) slope += *std::min_element(taus.begin(), taus.end());
  return ValBound::linear(slope * Rat(kGridPerQ), offset * Rat(kGridPerQ));
}

ModeRule ModeRule::times_qpow(const Rat& s) const {
  ModeRule r = *this;
  r.sigma += s;
  return r;
}

ModeRule ModeRule::times_qint(long long a, int e) const {
  ModeRule r = *this;
  r.qints.emplace_back(a, e);
  return r;
}

ModeRule ModeRule::scaled(const Rat& x) const {
  ModeRule r = *this;
  r.c *= x;
  return r;
}

ModeRule operator*(const ModeRule& x, const ModeRule& y) {
  ModeRule r;
  r.c = x.c * y.c;
  r.sigma = x.sigma + y.sigma;
  r.qq = x.qq + y.qq;
  r.qints = x.qints;
  r.qints.insert(r.qints.end(), y.qints.begin(), y.qints.end());
  if (x.taus.empty()) {
    r.taus = y.taus;
  } else if (y.taus.empty()) {
    r.taus = x.taus;
  } else {
    for (const auto& s : x.taus)
      for (const auto& t : y.taus) r.taus.push_back(s + t);
  }
  r.div_m = x.div_m + y.div_m;
  return r;
}

namespace {

// Laurent polynomial in q and u = q^m, exponents in grid units.
using Poly = std::map<std::pair<long long, long long>, Rat>;

long long grid_exponent(const Rat& e) {
  Rat g = e * Rat(kGridPerQ);
  if (!g.is_integer()) throw std::invalid_argument("exponent " + e.str() + " is off the q grid");
  return g.floor();
}

Poly poly_mul(const Poly& x, const Poly& y) {
  Poly r;
  for (const auto& [ex, cx] : x)
    for (const auto& [ey, cy] : y) r[{ex.first + ey.first, ex.second + ey.second}].add_mul(cx, cy);
  std::erase_if(r, [](const auto& kv) { return kv.second.is_zero(); });
  return r;
}

Poly poly_pow(const Poly& x, int e) {
  Poly r{{{0, 0}, Rat(1)}};
  for (int i = 0; i < e; ++i) r = poly_mul(r, x);
  return r;
}

// q - 1/q
const Poly& q_diff() {
  static const Poly p{{{kGridPerQ, 0}, Rat(1)}, {{-kGridPerQ, 0}, Rat(-1)}};
  return p;
}

// u^a - u^-a, a > 0
Poly u_diff(long long a) { return Poly{{{0, a * kGridPerQ}, Rat(1)}, {{0, -a * kGridPerQ}, Rat(-1)}}; }

// num / ((q - 1/q)^qden prod_a (u^a - u^-a)^uden[a])
struct Frac {
  Poly num;
  int qden = 0;
  std::map<long long, int> uden;
};

std::optional<Frac> to_frac(const ModeRule& r) {
  if (r.c.is_zero()) return std::nullopt;
  Frac f;
  f.num[{0, grid_exponent(r.sigma)}] = r.c;
  if (r.qq > 0) f.num = poly_mul(f.num, poly_pow(q_diff(), r.qq));
  if (r.qq < 0) f.qden += -r.qq;
  for (const auto& [a, e] : r.qints) {
    if (a == 0) {
      if (e > 0) return std::nullopt;
      throw ZeroSeries("mode rule divides by [0]");
    }
    const long long A = std::llabs(a);
    const int n = std::abs(e);
    if (a < 0 && n % 2 == 1) f.num = poly_mul(f.num, Poly{{{0, 0}, Rat(-1)}});
    if (e > 0) {
      f.num = poly_mul(f.num, poly_pow(u_diff(A), n));
      f.qden += n;
    } else {
      f.num = poly_mul(f.num, poly_pow(q_diff(), n));
      f.uden[A] += n;
    }
  }
  if (!r.taus.empty()) {
    Poly s;
    for (const auto& t : r.taus) s[{0, grid_exponent(t)}] += Rat(1);
    f.num = poly_mul(f.num, s);
  }
  return f;
}

// The sum over a common denominator.
Frac combine(const std::vector<Frac>& fs) {
  Frac out;
  for (const auto& f : fs) {
    out.qden = std::max(out.qden, f.qden);
    for (const auto& [a, n] : f.uden) out.uden[a] = std::max(out.uden[a], n);
  }
  for (const auto& f : fs) {
    Poly t = poly_mul(f.num, poly_pow(q_diff(), out.qden - f.qden));
    for (const auto& [a, n] : out.uden) {
      auto it = f.uden.find(a);
      t = poly_mul(t, poly_pow(u_diff(a), n - (it == f.uden.end() ? 0 : it->second)));
    }
    for (const auto& [e, c] : t) out.num[e] += c;
  }
  std::erase_if(out.num, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

ValBound frac_bound(const Frac& f, long long m0) {
  if (f.num.empty()) return ValBound::empty();
  long long jmin = f.num.begin()->first.second;
  for (const auto& [e, c] : f.num) jmin = std::min(jmin, e.second);
  long long off = std::numeric_limits<long long>::max();
  for (const auto& [e, c] : f.num) off = std::min(off, e.first + (e.second - jmin) * m0);
  // v(u^a - u^-a) = -a m and v(q - 1/q) = -1 exactly
  long long slope = jmin;
  for (const auto& [a, n] : f.uden) slope += static_cast<long long>(n) * a * kGridPerQ;
  off += static_cast<long long>(f.qden) * kGridPerQ;
  return ValBound::linear(Rat(slope), Rat(off));
}

// f at u = q^m to the current truncation order.  Each denominator factor is
// -q^-g (1 - q^2g), so its inverse is a geometric series and no precision is
// lost to cancellation.
QSeries frac_value(const Frac& f, long long m) {
  std::map<long long, Rat> num;
  for (const auto& [e, c] : f.num) num[e.first + e.second * m] += c;
  std::erase_if(num, [](const auto& kv) { return kv.second.is_zero(); });
  if (num.empty()) return QSeries();
  std::vector<long long> steps;  // grid exponents 2g of the (1 - q^2g) factors
  long long vden = 0;
  for (int i = 0; i < f.qden; ++i) steps.push_back(2 * kGridPerQ);
  vden -= static_cast<long long>(f.qden) * kGridPerQ;
  for (const auto& [a, n] : f.uden)
    for (int i = 0; i < n; ++i) {
      steps.push_back(2 * a * m * kGridPerQ);
      vden -= a * m * kGridPerQ;
    }
  const Rat sign((steps.size() % 2 == 0) ? 1 : -1);
  const long long cap = qmax_grid();
  const long long vnum = num.begin()->first;
  const long long val = vnum - vden;
  if (steps.empty()) {
    std::vector<Rat> dense(static_cast<size_t>(num.rbegin()->first - vnum + 1));
    for (const auto& [e, c] : num) dense[static_cast<size_t>(e - vnum)] = c;
    return QSeries::from_dense(static_cast<int>(val), std::move(dense));
  }
  if (val > cap) return QSeries::zero_to(static_cast<int>(cap));
  const long long len = cap - val + 1;
  std::vector<Rat> g(static_cast<size_t>(len));
  g[0] = Rat(1);
  for (long long st : steps)
    for (long long i = st; i < len; ++i) g[static_cast<size_t>(i)] += g[static_cast<size_t>(i - st)];
  std::vector<Rat> dense(static_cast<size_t>(len));
  for (const auto& [e, c] : num) {
    const long long off = e - vnum;
    for (long long i = 0; i + off < len; ++i)
      if (!g[static_cast<size_t>(i)].is_zero()) dense[static_cast<size_t>(i + off)].add_mul(c * sign, g[static_cast<size_t>(i)]);
  }
  return QSeries::from_dense(static_cast<int>(val), std::move(dense), static_cast<int>(cap));
}

std::map<int, std::vector<Frac>> grouped(const std::vector<ModeRule>& rules) {
  // 1/m has valuation zero but does not combine with rules of another power
  std::map<int, std::vector<Frac>> groups;
  for (const auto& r : rules)
    if (auto f = to_frac(r)) groups[r.div_m].push_back(std::move(*f));
  return groups;
}

}  // namespace

ValBound sum_bound(const std::vector<ModeRule>& rules, long long m0) {
  if (m0 < 1) throw std::invalid_argument("sum_bound needs m0 >= 1");
  ValBound out;
  for (const auto& [d, fs] : grouped(rules)) out = bound_min(out, frac_bound(combine(fs), m0));
  return out;
}

QSeries sum_value(const std::vector<ModeRule>& rules, int m) {
  if (m < 1) throw std::invalid_argument("mode rules are evaluated at m >= 1");
  QSeries out;
  for (const auto& [d, fs] : grouped(rules)) {
    Rat w(1);
    for (int i = 0; i < d; ++i) w *= Rat(1, m);
    out += frac_value(combine(fs), m).scaled(w);
  }
  return out;
}

ModeRule pairing_rule(Family f, int k) {
  ModeRule r;
  r.div_m = 1;
  switch (f) {
    case Family::a: r.qints = {{k + 2, 1}, {2, 1}}; break;
    case Family::b: r.c = Rat(-1); r.qints = {{1, 2}}; break;
    case Family::c: r.qints = {{1, 2}}; break;
  }
  return r;
}

LinearForm::LinearForm(int N) : N_(N) {
  if (N < 0) throw std::invalid_argument("mode cutoff must be non-negative");
  for (auto& p : fam_) {
    p.pos.coef.assign(static_cast<size_t>(N), QSeries());
    p.neg.coef.assign(static_cast<size_t>(N), QSeries());
  }
}

QSeries LinearForm::coef(Family f, int n) const {
  if (n == 0 || std::abs(n) > N_) return QSeries();
  const FamilyPart& p = part(f);
  return n > 0 ? p.pos.coef[static_cast<size_t>(n - 1)] : p.neg.coef[static_cast<size_t>(-n - 1)];
}

bool LinearForm::has_oscillators(Family f) const {
  const FamilyPart& p = part(f);
  for (const auto& s : p.pos.coef)
    if (!s.is_zero()) return true;
  for (const auto& s : p.neg.coef)
    if (!s.is_zero()) return true;
  return false;
}

bool LinearForm::involves(Family f) const {
  const FamilyPart& p = part(f);
  return has_oscillators(f) || !p.beta.is_zero() || !p.gamma.is_zero() || !p.delta.is_zero();
}

bool LinearForm::is_zero() const {
  for (Family f : kAllFamilies)
    if (involves(f)) return false;
  return true;
}

void LinearForm::add_rule(Family f, int sign, const ModeRule& rule) {
  Side& s = sign > 0 ? part(f).pos : part(f).neg;
  for (int m = 1; m <= N_; ++m) s.coef[static_cast<size_t>(m - 1)] += rule.eval(m);
  s.rules.push_back(rule);
  s.bound = bound_min(s.bound, rule.bound());
}

void LinearForm::add_mode(Family f, int n, const QSeries& value) {
  if (n == 0) throw std::invalid_argument("oscillator index must be nonzero");
  if (std::abs(n) > N_) throw CutoffExceeded("mode " + std::to_string(n) + " exceeds cutoff " + std::to_string(N_));
  Side& s = n > 0 ? part(f).pos : part(f).neg;
  s.coef[static_cast<size_t>(std::abs(n) - 1)] += value;
  s.extra[std::abs(n)] += value;
  // a single mode imposes no constraint past the cutoff
  if (s.bound.none) s.bound = ValBound::linear(Rat(kExact), Rat(0));
  int v = value.valuation();
  Rat at_n = s.bound.at(std::abs(n));
  if (Rat(v) < at_n) s.bound.offset -= at_n - Rat(v);
}

LinearForm LinearForm::operator-() const { return scaled(Rat(-1)); }

LinearForm operator+(const LinearForm& x, const LinearForm& y) {
  if (x.N_ != y.N_) throw std::invalid_argument("mode cutoffs differ");
  LinearForm r = x;
  for (int i = 0; i < kFamilies; ++i) {
    FamilyPart& p = r.fam_[static_cast<size_t>(i)];
    const FamilyPart& q = y.fam_[static_cast<size_t>(i)];
    for (int m = 0; m < x.N_; ++m) {
      p.pos.coef[static_cast<size_t>(m)] += q.pos.coef[static_cast<size_t>(m)];
      p.neg.coef[static_cast<size_t>(m)] += q.neg.coef[static_cast<size_t>(m)];
    }
    for (const auto& [m, v] : q.pos.extra) p.pos.extra[m] += v;
    for (const auto& [m, v] : q.neg.extra) p.neg.extra[m] += v;
    p.pos.rules.insert(p.pos.rules.end(), q.pos.rules.begin(), q.pos.rules.end());
    p.neg.rules.insert(p.neg.rules.end(), q.neg.rules.begin(), q.neg.rules.end());
    p.pos.bound = bound_min(p.pos.bound, q.pos.bound);
    p.neg.bound = bound_min(p.neg.bound, q.neg.bound);
    p.beta += q.beta;
    p.gamma += q.gamma;
    p.delta += q.delta;
  }
  return r;
}

LinearForm LinearForm::scaled(const Rat& r) const {
  LinearForm out = *this;
  for (auto& p : out.fam_) {
    for (auto& c : p.pos.coef) c = c.scaled(r);
    for (auto& c : p.neg.coef) c = c.scaled(r);
    for (auto& [m, v] : p.pos.extra) v = v.scaled(r);
    for (auto& [m, v] : p.neg.extra) v = v.scaled(r);
    for (auto& x : p.pos.rules) x = x.scaled(r);
    for (auto& x : p.neg.rules) x = x.scaled(r);
    p.beta *= r;
    p.gamma *= r;
    p.delta *= r;
  }
  return out;
}

LinearForm LinearForm::shifted(const Rat& s) const {
  LinearForm out = *this;
  for (auto& p : out.fam_) {
    for (auto& [m, v] : p.pos.extra) v *= qpow(-s * Rat(m));
    for (auto& [m, v] : p.neg.extra) v *= qpow(s * Rat(m));
    for (auto& x : p.pos.rules) x = x.times_qpow(-s);
    for (auto& x : p.neg.rules) x = x.times_qpow(s);
    // re-evaluated from the closed forms: multiplying stored values by
    // q^(-s m) would cost s m orders of precision
    for (Side* side : {&p.pos, &p.neg}) {
      for (int m = 1; m <= N_; ++m) {
        QSeries v = side->rules.empty() ? QSeries() : sum_value(side->rules, m);
        auto it = side->extra.find(m);
        if (it != side->extra.end()) v += it->second;
        side->coef[static_cast<size_t>(m - 1)] = std::move(v);
      }
    }
    Rat g = s * Rat(kGridPerQ);
    if (!p.pos.bound.none) p.pos.bound.slope -= g;
    if (!p.neg.bound.none) p.neg.bound.slope += g;
    p.gamma += s * p.delta;
  }
  return out;
}

int LinearForm::min_prec() const {
  int prec = kExact;
  for (const auto& p : fam_) {
    for (const auto& c : p.pos.coef) prec = std::min(prec, c.prec());
    for (const auto& c : p.neg.coef) prec = std::min(prec, c.prec());
  }
  return prec;
}

bool same_exponent(const LinearForm& x, const LinearForm& y, int* prec) {
  if (x.N_ != y.N_) return false;
  int lowest = kExact;
  bool equal = true;
  for (int i = 0; i < kFamilies && equal; ++i) {
    const FamilyPart& p = x.fam_[static_cast<size_t>(i)];
    const FamilyPart& q = y.fam_[static_cast<size_t>(i)];
    if (p.beta != q.beta || p.gamma != q.gamma || p.delta != q.delta) equal = false;
    for (int m = 0; m < x.N_ && equal; ++m) {
      for (const auto* pr : {&p.pos, &p.neg}) {
        const auto& qr = pr == &p.pos ? q.pos : q.neg;
        const QSeries& u = pr->coef[static_cast<size_t>(m)];
        const QSeries& v = qr.coef[static_cast<size_t>(m)];
        lowest = std::min({lowest, u.prec(), v.prec()});
        if (first_difference(u, v)) equal = false;
      }
    }
  }
  if (prec) *prec = lowest;
  return equal;
}

std::string LinearForm::key(int upto) const {
  std::string s;
  for (Family f : kAllFamilies) {
    const FamilyPart& p = part(f);
    if (!involves(f)) continue;
    s += std::string("[") + family_name(f);
    for (int m = N_; m >= 1; --m) {
      const QSeries& c = p.neg.coef[static_cast<size_t>(m - 1)];
      if (!c.is_zero()) s += " " + std::to_string(-m) + ":" + c.str(upto);
    }
    for (int m = 1; m <= N_; ++m) {
      const QSeries& c = p.pos.coef[static_cast<size_t>(m - 1)];
      if (!c.is_zero()) s += " " + std::to_string(m) + ":" + c.str(upto);
    }
    s += " Q:" + p.beta.str() + " Plnq:" + p.gamma.str() + " Plnz:" + p.delta.str() + "]";
  }
  return s;
}

ProfileKind profile_kind_from_string(const std::string& s) {
  static const std::pair<const char*, ProfileKind> table[] = {
      {"A_plus", ProfileKind::A_plus},   {"A_minus", ProfileKind::A_minus}, {"a_field", ProfileKind::a_field},
      {"a_plus", ProfileKind::a_plus},   {"a_minus", ProfileKind::a_minus}, {"b_field", ProfileKind::b_field},
      {"b_plus", ProfileKind::b_plus},   {"b_minus", ProfileKind::b_minus}, {"c_field", ProfileKind::c_field},
      {"bc_sum", ProfileKind::bc_sum}};
  for (const auto& [name, kind] : table)
    if (s == name) return kind;
  throw UnknownKind("unknown profile kind: " + s);
}

namespace {

// -sum_{n != 0} f_n / [n] q^{-alpha |n|} (q^s z)^{-n} + Q_f + P_f ln(q^s z)
LinearForm boson_field(Family f, const Rat& alpha, const Rat& s, int N) {
  LinearForm x(N);
  ModeRule inv_qint;
  inv_qint.qints = {{1, -1}};
  x.add_rule(f, +1, inv_qint.scaled(Rat(-1)).times_qpow(-alpha - s));
  x.add_rule(f, -1, inv_qint.times_qpow(-alpha + s));
  FamilyPart& p = x.part(f);
  p.beta = Rat(1);
  p.delta = Rat(1);
  p.gamma = s;
  return x;
}

// +-((q - 1/q) sum_{n>0} f_{+-n} z^{-+n} + P_f ln q) at argument q^s z
LinearForm boson_half(Family f, int pm, const Rat& s, int N) {
  LinearForm x(N);
  ModeRule r;
  r.qq = 1;
  r.c = Rat(pm);
  x.add_rule(f, pm, r.times_qpow(pm > 0 ? -s : s));
  x.part(f).gamma = Rat(pm);
  return x;
}

// A_+-(z) = +-((q - 1/q) sum_{n>0} [n]/[2n] a_{+-n} z^{-+n} + P_a ln q / 2)
LinearForm cartan_half(int pm, const Rat& s, int N) {
  LinearForm x(N);
  ModeRule r;
  r.qq = 1;
  r.c = Rat(pm);
  r.qints = {{1, 1}, {2, -1}};
  x.add_rule(Family::a, pm, r.times_qpow(pm > 0 ? -s : s));
  x.part(Family::a).gamma = Rat(pm, 2);
  return x;
}

}  // namespace

LinearForm build_profile(ProfileKind kind, const Rat& shift, int sign, int N, const Rat& alpha) {
  if (N < 1) throw std::invalid_argument("mode cutoff must be at least 1");
  if (sign != 1 && sign != -1) throw std::invalid_argument("profile sign must be +-1");
  LinearForm x(N);
  switch (kind) {
    case ProfileKind::A_plus: x = cartan_half(+1, shift, N); break;
    case ProfileKind::A_minus: x = cartan_half(-1, shift, N); break;
    case ProfileKind::a_field: x = boson_field(Family::a, alpha, shift, N); break;
    case ProfileKind::a_plus: x = boson_half(Family::a, +1, shift, N); break;
    case ProfileKind::a_minus: x = boson_half(Family::a, -1, shift, N); break;
    case ProfileKind::b_field: x = boson_field(Family::b, alpha, shift, N); break;
    case ProfileKind::b_plus: x = boson_half(Family::b, +1, shift, N); break;
    case ProfileKind::b_minus: x = boson_half(Family::b, -1, shift, N); break;
    case ProfileKind::c_field: x = boson_field(Family::c, alpha, shift, N); break;
    case ProfileKind::bc_sum: x = boson_field(Family::b, alpha, shift, N) + boson_field(Family::c, alpha, shift, N); break;
    default: throw UnknownKind("unknown profile kind");
  }
  return sign > 0 ? x : -x;
}

LinearForm h_mode(int n, int k, int N) {
  if (n == 0) throw std::invalid_argument("H_0 is not a generator");
  if (std::abs(n) > N) throw CutoffExceeded("H mode " + std::to_string(n) + " exceeds cutoff " + std::to_string(N));
  const Rat m(std::abs(n));
  LinearForm x(N);
  x.add_mode(Family::a, n, qpow(-m));
  x.add_mode(Family::b, n, qpow(Rat(-k, 2) * m) + qpow((Rat(-k, 2) - Rat(2)) * m));
  return x;
}

LinearForm h_series(int sign, const ModeRule& rho, int k, int N) {
  if (!rho.taus.empty()) throw std::invalid_argument("h_series expects a rule without q-power sums");
  LinearForm x(N);
  x.add_rule(Family::a, sign, rho.times_qpow(Rat(-1)));
  ModeRule rb = rho;
  rb.taus = {Rat(-k, 2), Rat(-k, 2) - Rat(2)};
  x.add_rule(Family::b, sign, rb);
  return x;
}

}  // namespace eqp
