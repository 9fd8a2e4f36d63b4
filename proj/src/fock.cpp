#include "eqp/fock.hpp"

#include <exception>
#include <functional>
#include <mutex>
#include <set>
#include <sstream>

namespace eqp {

namespace {

int slot(Family f, int m, int D) { return static_cast<int>(f) * D + m - 1; }

bool exact_zero(const QSeries& s) { return s.is_zero() && s.is_exact(); }

QSeries binomial(int n, int j) {
  Rat c(1);
  for (int i = 0; i < j; ++i) c = c * Rat(n - i) / Rat(i + 1);
  return QSeries(c);
}

void accumulate(FockVector& v, const FockState& s, const Rat& e, const QSeries& amp) {
  auto key = std::make_pair(s, e);
  auto it = v.find(key);
  if (it == v.end()) v.emplace(std::move(key), amp);
  else it->second += amp;
}

bool in_window(const Rat& e, int window) { return e >= Rat(-(window + 1)) && e <= Rat(window + 1); }

// Running comparison of matrix-element monomials.
void compare_into(OracleReport& rep, const FockState& s, const FockState& t, const Rat& a, const Rat& b,
                  const QSeries& lhs, const QSeries& rhs) {
  ++rep.compared;
  rep.certified_prec = std::min({rep.certified_prec, lhs.prec(), rhs.prec()});
  auto d = first_difference(lhs, rhs);
  if (!d) return;
  rep.pass = false;
  if (!rep.first_mismatch)
    rep.first_mismatch = FockMismatch{s.str(), t.str(), a, b, *d, lhs.coeff_grid(*d), rhs.coeff_grid(*d)};
}

void merge_into(OracleReport& total, const OracleReport& part) {
  total.pass = total.pass && part.pass;
  total.compared += part.compared;
  total.certified_prec = std::min(total.certified_prec, part.certified_prec);
  if (!total.first_mismatch && part.first_mismatch) total.first_mismatch = part.first_mismatch;
}

// Runs body(i) for i < n, in parallel when asked; the first exception is
// rethrown after the loop.
void for_each_index(size_t n, bool parallel, const std::function<void(size_t)>& body) {
  std::vector<std::exception_ptr> errors(n);
  const long long count = static_cast<long long>(n);
  const int cap = qmax_grid();
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (long long i = 0; i < count; ++i) {
    ScopedThreadQmaxGrid inherit(cap);
    try {
      body(static_cast<size_t>(i));
    } catch (...) {
      errors[static_cast<size_t>(i)] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace

std::string FockState::str() const {
  std::ostringstream os;
  const int D = static_cast<int>(occ.size()) / kFamilies;
  bool any = false;
  for (Family f : kAllFamilies)
    for (int m = 1; m <= D; ++m) {
      int n = occ[static_cast<size_t>(slot(f, m, D))];
      if (n == 0) continue;
      os << (any ? " " : "") << family_name(f) << "_-" << m;
      if (n > 1) os << "^" << n;
      any = true;
    }
  if (!any) os << "1";
  os << " |" << weight[0].str() << "," << weight[1].str() << "," << weight[2].str() << ">";
  return os.str();
}

FockSpace::FockSpace(int k, int D) : k_(k), D_(D) {
  if (D < 1) throw std::invalid_argument("Fock degree cutoff must be positive");
}

FockState FockSpace::vacuum(const Weights& w) const {
  FockState s;
  s.weight = w;
  s.occ.assign(static_cast<size_t>(kFamilies * D_), 0);
  return s;
}

std::vector<FockState> FockSpace::basis(const Weights& w) const {
  std::vector<FockState> out;
  FockState s = vacuum(w);
  const int slots = kFamilies * D_;
  std::function<void(int)> rec = [&](int i) {
    if (i == slots) {
      out.push_back(s);
      return;
    }
    const int m = i % D_ + 1;
    for (int n = 0; s.degree + n * m <= D_; ++n) {
      s.occ[static_cast<size_t>(i)] = n;
      s.degree += n * m;
      rec(i + 1);
      s.degree -= n * m;
    }
    s.occ[static_cast<size_t>(i)] = 0;
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

FockVector FockSpace::apply_mode(Family f, int n, const FockState& s) const {
  FockVector out;
  if (n == 0 || std::abs(n) > D_) return out;
  FockState t = s;
  const size_t i = static_cast<size_t>(slot(f, std::abs(n), D_));
  if (n > 0) {
    if (s.occ[i] == 0) return out;
    t.occ[i] -= 1;
    t.degree -= n;
    accumulate(out, t, Rat(0), oscillator_pairing(f, n, k_).scaled(Rat(s.occ[i])));
  } else {
    if (s.degree - n > D_) return out;
    t.occ[i] += 1;
    t.degree -= n;
    accumulate(out, t, Rat(0), QSeries(Rat(1)));
  }
  return out;
}

FockVector FockSpace::apply_linear(const LinearForm& form, const FockState& s) const {
  FockVector out;
  for (Family f : kAllFamilies)
    for (int n = -D_; n <= D_; ++n) {
      if (n == 0 || std::abs(n) > form.cutoff()) continue;
      QSeries c = form.coef(f, n);
      if (exact_zero(c)) continue;
      for (const auto& [key, amp] : apply_mode(f, n, s)) accumulate(out, key.first, key.second, c * amp);
    }
  return out;
}

FockVector FockSpace::apply_term(const VertexTerm& t, const FockState& s) const {
  struct Partial {
    FockState state;
    QSeries amp;
  };
  std::vector<Partial> cur{{s, t.coeff}};
  // annihilators: exp(alpha f_m) f_{-m}^n = sum_j C(n,j) (alpha [f_m,f_-m])^j f_{-m}^{n-j}
  for (Family f : kAllFamilies)
    for (int m = 1; m <= std::min(D_, t.form.cutoff()); ++m) {
      const size_t i = static_cast<size_t>(slot(f, m, D_));
      if (s.occ[i] == 0) continue;
      QSeries alpha = t.form.coef(f, m);
      if (exact_zero(alpha)) continue;
      const QSeries ag = alpha * oscillator_pairing(f, m, k_);
      std::vector<Partial> next;
      for (const auto& p : cur) {
        const int n = p.state.occ[i];
        QSeries power(Rat(1));
        for (int j = 0; j <= n; ++j) {
          Partial q = p;
          q.state.occ[i] = n - j;
          q.state.degree -= m * j;
          q.amp = p.amp * binomial(n, j) * power;
          next.push_back(std::move(q));
          power = power * ag;
        }
      }
      cur = std::move(next);
    }
  // zero modes: q^{gamma P} z^{delta P} on the input weights, then e^{beta Q}
  Rat zexp = t.zpow;
  Rat qexp(0);
  Weights out_w = s.weight;
  for (Family f : kAllFamilies) {
    const FamilyPart& part = t.form.part(f);
    const int fi = static_cast<int>(f);
    qexp += part.gamma * s.weight[fi];
    zexp += part.delta * s.weight[fi];
    out_w[fi] += part.beta * zero_mode_pairing(f, k_);
  }
  const QSeries zero_factor = qpow(qexp);
  for (auto& p : cur) {
    p.amp = p.amp * zero_factor;
    p.state.weight = out_w;
  }
  // creators: exp(alpha f_{-m}) adds j quanta with alpha^j / j!, up to degree D
  for (Family f : kAllFamilies)
    for (int m = 1; m <= std::min(D_, t.form.cutoff()); ++m) {
      QSeries alpha = t.form.coef(f, -m);
      if (exact_zero(alpha)) continue;
      const size_t i = static_cast<size_t>(slot(f, m, D_));
      std::vector<Partial> next;
      for (const auto& p : cur) {
        QSeries power(Rat(1));
        Rat fact(1);
        for (int j = 0; p.state.degree + m * j <= D_; ++j) {
          Partial q = p;
          q.state.occ[i] += j;
          q.state.degree += m * j;
          q.amp = p.amp * power.scaled(fact.inverse());
          next.push_back(std::move(q));
          power = power * alpha;
          fact = fact * Rat(j + 1);
        }
      }
      cur = std::move(next);
    }
  FockVector out;
  for (const auto& p : cur) {
    if (exact_zero(p.amp)) continue;
    accumulate(out, p.state, zexp + Rat(p.state.degree - s.degree), p.amp);
  }
  return out;
}

FockAction::FockAction(const FockSpace& space, const Current& current) : space_(space), current_(current) {
  if (current.level() != space.level()) throw LevelMismatch("current and Fock space at different levels");
}

const FockVector& FockAction::on(const FockState& s) const {
  {
    std::shared_lock lock(mu_);
    auto it = cache_.find(s);
    if (it != cache_.end()) return *it->second;
  }
  auto v = std::make_unique<FockVector>();
  for (const auto& t : current_.terms())
    for (const auto& [key, amp] : space_.apply_term(t, s)) accumulate(*v, key.first, key.second, amp);
  std::unique_lock lock(mu_);
  auto [it, inserted] = cache_.emplace(s, std::move(v));
  return *it->second;
}

Rat FockAction::offset(size_t j, const Weights& w) const {
  const VertexTerm& t = current_.terms().at(j);
  Rat e = t.zpow;
  for (Family f : kAllFamilies) e += t.form.part(f).delta * w[static_cast<int>(f)];
  return e;
}

Weights FockAction::shift(size_t j) const {
  const VertexTerm& t = current_.terms().at(j);
  Weights d{};
  for (Family f : kAllFamilies)
    d[static_cast<int>(f)] = t.form.part(f).beta * zero_mode_pairing(f, current_.level());
  return d;
}

bool TwoPoint::complete(const FockState& t, const Rat& b) const {
  if (b_hi && b > *b_hi) return false;
  if (b_lo_rel && b < Rat(t.degree) + *b_lo_rel) return false;
  return true;
}

TwoPoint two_point(const FockAction& x, const FockAction& y, const FockState& s, Order order) {
  TwoPoint out;
  const int D = static_cast<int>(s.occ.size()) / kFamilies;
  auto add = [&](const FockState& t, const Rat& a, const Rat& b, const QSeries& amp) {
    auto key = std::make_tuple(t, a, b);
    auto it = out.values.find(key);
    if (it == out.values.end()) out.values.emplace(std::move(key), amp);
    else it->second += amp;
  };
  const size_t nx = x.current().size(), ny = y.current().size();
  if (order == Order::direct) {
    for (const auto& [ku, ay] : y.on(s))
      for (const auto& [kt, ax] : x.on(ku.first)) add(kt.first, kt.second, ku.second, ax * ay);
    // intermediate states above D would add w-powers above D - deg s + offset
    for (size_t j = 0; j < ny; ++j) {
      Rat bound = Rat(D - s.degree) + y.offset(j, s.weight);
      if (!out.b_hi || bound < *out.b_hi) out.b_hi = bound;
    }
  } else {
    for (const auto& [ku, ax] : x.on(s))
      for (const auto& [kt, ay] : y.on(ku.first)) add(kt.first, ku.second, kt.second, ax * ay);
    // intermediate states above D would add w-powers below deg t - D + offset
    for (size_t i = 0; i < nx; ++i) {
      Weights w = s.weight;
      const Weights d = x.shift(i);
      for (int f = 0; f < kFamilies; ++f) w[f] += d[f];
      for (size_t j = 0; j < ny; ++j) {
        Rat bound = Rat(-D) + y.offset(j, w);
        if (!out.b_lo_rel || bound > *out.b_lo_rel) out.b_lo_rel = bound;
      }
    }
  }
  return out;
}

OracleReport check_two_point(const FockSpace& space, const Current& x, const Current& y, const TwoPointSpec& spec) {
  const FockAction ax(space, x), ay(space, y);
  std::vector<std::unique_ptr<FockAction>> rhs;
  for (const auto& d : spec.delta) rhs.push_back(std::make_unique<FockAction>(space, d.rhs));
  const auto basis = space.basis(spec.weights);
  std::vector<OracleReport> parts(basis.size());

  for_each_index(basis.size(), spec.parallel, [&](size_t idx) {
    const FockState& s = basis[idx];
    const TwoPoint dir = two_point(ax, ay, s, Order::direct);
    const TwoPoint rev = two_point(ax, ay, s, Order::reversed);
    std::map<std::tuple<FockState, Rat, Rat>, QSeries> right;
    for (size_t r = 0; r < spec.delta.size(); ++r) {
      const DeltaTerm& d = spec.delta[r];
      for (const auto& [kt, amp] : rhs[r]->on(s)) {
        // z^p w^p q^{alpha m} (w/z)^m w^e
        const int p = spec.zw_power;
        for (int m = -(spec.window + 3); m <= spec.window + 3; ++m) {
          Rat a(p - m), b = Rat(p + m) + kt.second;
          if (!in_window(a, spec.window) || !in_window(b, spec.window)) continue;
          QSeries v = spec.prefactor * amp * qpow(d.alpha * Rat(m)).scaled(Rat(d.sign));
          auto key = std::make_tuple(kt.first, a, b);
          auto it = right.find(key);
          if (it == right.end()) right.emplace(std::move(key), v);
          else it->second += v;
        }
      }
    }
    using Map = std::map<std::tuple<FockState, Rat, Rat>, QSeries>;
    std::set<std::tuple<FockState, Rat, Rat>> keys;
    for (const Map* m : {&dir.values, &rev.values, static_cast<const Map*>(&right)})
      for (const auto& kv : *m) keys.insert(kv.first);
    OracleReport& rep = parts[idx];
    const QSeries zero(Rat(0));
    for (const auto& key : keys) {
      const auto& [t, a, b] = key;
      if (!in_window(a, spec.window) || !in_window(b, spec.window)) continue;
      if (!dir.complete(t, b) || !rev.complete(t, b)) continue;
      auto get = [&](const std::map<std::tuple<FockState, Rat, Rat>, QSeries>& m) {
        auto it = m.find(key);
        return it == m.end() ? zero : it->second;
      };
      compare_into(rep, s, t, a, b, get(dir.values) - get(rev.values), get(right));
    }
  });

  OracleReport total;
  total.id = spec.id;
  for (const auto& p : parts) merge_into(total, p);
  if (total.compared == 0) throw InsufficientWindow(spec.id + ": no complete matrix element in the window");
  total.detail = std::to_string(basis.size()) + " source states, D=" + std::to_string(space.cutoff());
  return total;
}

namespace {

// The realized E+- (and e, f) equal (q - 1/q) z times the generating
// currents sum_n E_n z^{-n-1}; undo that normalisation.
Current drinfeld_normalized(const Current& x) {
  const QSeries qd = qpow(Rat(1)) - qpow(Rat(-1));
  Current out(x.level(), x.cutoff());
  for (VertexTerm t : x.terms()) {
    t.coeff = t.coeff * qd.inverse();
    t.zpow -= Rat(1);
    out.add(std::move(t));
  }
  return out;
}

}  // namespace

OracleReport check_delta_relation(DeltaRelation which, const RealizationConfig& cfg, int D, int window,
                                  const Weights& weights, bool drop_prefactor, bool parallel) {
  cfg.validate();
  if (D < 2) throw std::invalid_argument("delta relation needs D >= 2");
  if (window > D) throw std::invalid_argument("window radius must not exceed D");
  const Rat k(cfg.k), h(cfg.k, 2);
  FockSpace space(cfg.k, D);
  TwoPointSpec spec;
  spec.window = window;
  spec.weights = weights;
  spec.parallel = parallel;
  const QSeries qd = qpow(Rat(1)) - qpow(Rat(-1));
  spec.prefactor = drop_prefactor ? QSeries(Rat(1)) : qd.inverse();
  Current x(cfg.k, cfg.N), y(cfg.k, cfg.N);
  if (which == DeltaRelation::ee) {
    spec.id = "ee";
    x = build_trig(TrigName::E_plus, cfg);
    y = build_trig(TrigName::E_minus, cfg);
    const Current km = build_trig(TrigName::K_minus, cfg), kp = build_trig(TrigName::K_plus, cfg);
    // K-(q^{k/2+2} w)^-1 K-(q^{k/2} w)^-1 and K+(q^{-k/2+2} w)^-1 K+(q^{-k/2} w)^-1
    spec.delta.push_back({1, k, coincident_product(km.shifted(h + Rat(2)).inverse(), km.shifted(h).inverse())});
    spec.delta.push_back({-1, -k, coincident_product(kp.shifted(-h + Rat(2)).inverse(), kp.shifted(-h).inverse())});
  } else {
    spec.id = "efp";
    x = build_elliptic(EllipticName::e, cfg);
    y = build_elliptic(EllipticName::f, cfg);
    // delta(q^-k z/w) Psi+(q^{k/2} w) - delta(q^k z/w) Psi-(q^{-k/2} w)
    spec.delta.push_back({1, k, build_elliptic(EllipticName::Psi_plus, cfg).shifted(h)});
    spec.delta.push_back({-1, -k, build_elliptic(EllipticName::Psi_minus, cfg).shifted(-h)});
  }
  if (drop_prefactor) spec.id += " (prefactor dropped)";
  return check_two_point(space, drinfeld_normalized(x), drinfeld_normalized(y), spec);
}

std::vector<OracleReport> check_centrality_matrix(const RealizationConfig& cfg, int D, int window,
                                                  bool reduced_at_any_level, bool parallel) {
  cfg.validate();
  if (!reduced_at_any_level && cfg.k != -2) throw WrongLevel("centrality of l is stated at k = -2");
  const Current l = reduced_at_any_level ? build_l_reduced(cfg, false) : build_l(cfg);
  FockSpace space(cfg.k, D);
  const std::vector<std::pair<std::string, Current>> others{
      {"k+", build_elliptic(EllipticName::k_plus, cfg)},
      {"k-", build_elliptic(EllipticName::k_minus, cfg)},
      {"e", build_elliptic(EllipticName::e, cfg)},
      {"f", build_elliptic(EllipticName::f, cfg)},
      {"l", l}};
  std::vector<OracleReport> out;
  for (const auto& [name, x] : others) {
    TwoPointSpec spec;
    spec.id = "[l, " + name + "]";
    spec.window = window;
    spec.parallel = parallel;
    out.push_back(check_two_point(space, l, x, spec));
  }
  return out;
}

namespace {

// Single-variable vectors keyed by (target, z-power).
void add_scaled(FockVector& acc, const FockVector& v, const QSeries& c) {
  for (const auto& [key, amp] : v) accumulate(acc, key.first, key.second, c * amp);
}

FockVector apply_then(const FockVector& v, const std::function<FockVector(const FockState&)>& op) {
  FockVector out;
  for (const auto& [key, amp] : v)
    for (const auto& [k2, a2] : op(key.first)) accumulate(out, k2.first, key.second + k2.second, amp * a2);
  return out;
}

void compare_vectors(OracleReport& rep, const FockState& s, const FockVector& lhs, const FockVector& rhs,
                     const std::function<bool(const FockState&)>& keep) {
  std::set<std::pair<FockState, Rat>> keys;
  for (const auto* m : {&lhs, &rhs})
    for (const auto& kv : *m) keys.insert(kv.first);
  const QSeries zero(Rat(0));
  for (const auto& key : keys) {
    if (!keep(key.first)) continue;
    auto l = lhs.find(key), r = rhs.find(key);
    compare_into(rep, s, key.first, key.second, Rat(0), l == lhs.end() ? zero : l->second,
                 r == rhs.end() ? zero : r->second);
  }
}

FockVector difference(const FockVector& x, const FockVector& y) {
  FockVector out = x;
  add_scaled(out, y, QSeries(Rat(-1)));
  return out;
}

}  // namespace

std::vector<OracleReport> check_heisenberg_matrices(const RealizationConfig& cfg, int D, int nmax, bool literal_exponent) {
  cfg.validate();
  if (nmax > D) throw std::invalid_argument("mode range exceeds the degree cutoff");
  FockSpace space(cfg.k, D);
  const auto basis = space.basis();
  const int k = cfg.k;
  std::vector<OracleReport> out;

  // [f_n, f_m] on states where both orders stay within degree D
  OracleReport osc;
  osc.id = "[f_n, f_m]";
  for (Family f : kAllFamilies)
    for (Family g : kAllFamilies)
      for (int n = -nmax; n <= nmax; ++n)
        for (int m = -nmax; m <= nmax; ++m) {
          if (n == 0 || m == 0) continue;
          for (const auto& s : basis) {
            if (s.degree - m > D || s.degree - n > D || s.degree - n - m > D) continue;
            auto op_f = [&](const FockState& u) { return space.apply_mode(f, n, u); };
            auto op_g = [&](const FockState& u) { return space.apply_mode(g, m, u); };
            FockVector one;
            accumulate(one, s, Rat(0), QSeries(Rat(1)));
            FockVector lhs = difference(apply_then(apply_then(one, op_g), op_f), apply_then(apply_then(one, op_f), op_g));
            FockVector rhs;
            if (f == g && n + m == 0) add_scaled(rhs, one, commutator_value(ModeId::osc(f, n), ModeId::osc(g, m), k));
            compare_vectors(osc, s, lhs, rhs, [](const FockState&) { return true; });
          }
        }
  out.push_back(osc);

  // [P_f, e^{Q_f}] = [P_f, Q_f] e^{Q_f}, read off the weight shift
  OracleReport zero;
  zero.id = "[P_f, Q_f]";
  for (Family f : kAllFamilies) {
    LinearForm q(cfg.N);
    q.part(f).beta = Rat(1);
    const FockState vac = space.vacuum();
    for (const auto& [key, amp] : space.apply_term({QSeries(Rat(1)), Rat(0), q}, vac)) {
      const Rat before = vac.weight[static_cast<int>(f)], after = key.first.weight[static_cast<int>(f)];
      compare_into(zero, vac, key.first, Rat(0), Rat(0), QSeries(after - before), QSeries(zero_mode_pairing(f, k)));
      (void)amp;
    }
  }
  out.push_back(zero);

  // [H_n, H_m]
  OracleReport hh;
  hh.id = "[H_n, H_m]";
  for (int n = -nmax; n <= nmax; ++n)
    for (int m = -nmax; m <= nmax; ++m) {
      if (n == 0 || m == 0) continue;
      const LinearForm hn = h_mode(n, k, cfg.N), hm = h_mode(m, k, cfg.N);
      QSeries expect(Rat(0));
      if (n + m == 0) expect = (q_integer(2 * n) * q_integer(static_cast<long long>(k) * n)).scaled(Rat(1, n));
      for (const auto& s : basis) {
        if (s.degree - m > D || s.degree - n > D || s.degree - n - m > D) continue;
        auto op_n = [&](const FockState& u) { return space.apply_linear(hn, u); };
        auto op_m = [&](const FockState& u) { return space.apply_linear(hm, u); };
        FockVector one;
        accumulate(one, s, Rat(0), QSeries(Rat(1)));
        FockVector lhs = difference(apply_then(apply_then(one, op_m), op_n), apply_then(apply_then(one, op_n), op_m));
        FockVector rhs;
        add_scaled(rhs, one, expect);
        compare_vectors(hh, s, lhs, rhs, [](const FockState&) { return true; });
      }
    }
  out.push_back(hh);

  // [H_n, E+-(z)] = +-([2n]/n) q^{-+kn/2} z^n E+-(z)
  for (int sign : {1, -1}) {
    OracleReport he;
    he.id = sign > 0 ? "[H_n, E+(z)]" : "[H_n, E-(z)]";
    const FockAction e(space, build_trig(sign > 0 ? TrigName::E_plus : TrigName::E_minus, cfg));
    for (int n = -nmax; n <= nmax; ++n) {
      if (n == 0) continue;
      const LinearForm hn = h_mode(n, k, cfg.N);
      const int power = literal_exponent ? n : std::abs(n);
      const QSeries c = (q_integer(2 * n) * qpow(Rat(-sign * k * power, 2))).scaled(Rat(sign, n));
      auto op_h = [&](const FockState& u) { return space.apply_linear(hn, u); };
      auto op_e = [&](const FockState& u) { return e.on(u); };
      for (const auto& s : basis) {
        if (s.degree - n > D) continue;
        FockVector one;
        accumulate(one, s, Rat(0), QSeries(Rat(1)));
        FockVector lhs = difference(apply_then(apply_then(one, op_e), op_h), apply_then(apply_then(one, op_h), op_e));
        FockVector rhs;
        for (const auto& [key, amp] : e.on(s)) accumulate(rhs, key.first, key.second + Rat(n), c * amp);
        // H_n with n > 0 lowers degree: targets above D - n miss intermediate states
        compare_vectors(he, s, lhs, rhs, [&](const FockState& t) { return t.degree + std::max(n, 0) <= D; });
      }
    }
    out.push_back(he);
  }
  return out;
}

OracleReport vacuum_cross_check(const std::string& id, const Current& x, const Current& y, int D, int window,
                                const QSeries& engine_scale) {
  if (window > D) throw std::invalid_argument("window radius must not exceed D");
  FockSpace space(x.level(), D);
  const FockAction ax(space, x), ay(space, y);
  const FockState vac = space.vacuum();
  const TwoPoint tp = two_point(ax, ay, vac, Order::direct);

  // engine: z^{z_total - x_shift - j} w^{x_shift + j} coefficient c_j of coeff exp(log)
  std::map<std::pair<Rat, Rat>, QSeries> engine;
  for (const auto& p : multiply(x, y, Order::direct)) {
    bool neutral = true;
    for (Family f : kAllFamilies) {
      const Rat shift = (p.at_z.part(f).beta + p.at_w.part(f).beta) * zero_mode_pairing(f, x.level());
      if (!shift.is_zero()) neutral = false;
    }
    if (!neutral) continue;
    const XSeries sc = p.scalar();
    for (int j = sc.lo(); j <= std::min(sc.hi(), window + D); ++j) {
      const QSeries& c = sc.at(j);
      if (exact_zero(c)) continue;
      auto key = std::make_pair(p.z_total - Rat(j), Rat(j));
      auto it = engine.find(key);
      if (it == engine.end()) engine.emplace(key, c * engine_scale);
      else it->second += c * engine_scale;
    }
  }
  OracleReport rep;
  rep.id = id;
  std::set<std::pair<Rat, Rat>> keys;
  for (const auto& kv : engine) keys.insert(kv.first);
  for (const auto& [key, amp] : tp.values)
    if (std::get<0>(key) == vac) keys.insert({std::get<1>(key), std::get<2>(key)});
  const QSeries zero(Rat(0));
  for (const auto& key : keys) {
    const Rat& b = key.second;
    if (b < Rat(-window) || b > Rat(window) || !tp.complete(vac, b)) continue;
    auto e = engine.find(key);
    auto o = tp.values.find(std::make_tuple(vac, key.first, key.second));
    compare_into(rep, vac, vac, key.first, b, o == tp.values.end() ? zero : o->second,
                 e == engine.end() ? zero : e->second);
  }
  if (rep.compared == 0) throw InsufficientWindow(id + ": no complete vacuum element in the window");
  return rep;
}

}  // namespace eqp
