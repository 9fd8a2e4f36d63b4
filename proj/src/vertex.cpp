#include "eqp/vertex.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace eqp {

namespace {

bool pairs_vanish(Family f, int k) { return f == Family::a && k == -2; }

// Bound on v(c_m) for m > N from the closed forms of both sides, or none
// when the contraction vanishes past the cutoff.
ValBound contraction_bound(const LinearForm& x, const LinearForm& y, int k) {
  std::vector<ModeRule> terms;
  for (Family f : kAllFamilies) {
    if (pairs_vanish(f, k)) continue;
    const ModeRule g = pairing_rule(f, k);
    for (const auto& rx : x.part(f).pos.rules)
      for (const auto& ry : y.part(f).neg.rules) terms.push_back(rx * ry * g);
  }
  return sum_bound(terms, x.cutoff() + 1);
}

void zero_mode_exchange(const LinearForm& x, const LinearForm& y, int k, Rat& q_exp, Rat& var_exp) {
  q_exp = Rat(0);
  var_exp = Rat(0);
  for (Family f : kAllFamilies) {
    const Rat kappa = zero_mode_pairing(f, k);
    const Rat& beta = y.part(f).beta;
    if (beta.is_zero() || kappa.is_zero()) continue;
    q_exp += x.part(f).gamma * beta * kappa;
    var_exp += x.part(f).delta * beta * kappa;
  }
}

int to_int(const Rat& r, const char* what) {
  if (!r.is_integer()) throw std::invalid_argument(std::string(what) + " must be an integer, got " + r.str());
  return static_cast<int>(r.floor());
}

}  // namespace

bool Contraction::trivial() const {
  if (!q_exp.is_zero() || !var_exp.is_zero() || !log.above().is_zero()) return false;
  for (int m = log.lo(); m <= log.hi(); ++m)
    if (!log.at(m).is_zero() || !log.at(m).is_exact()) return false;
  return true;
}

std::vector<QSeries> contraction_coefficients(const LinearForm& x, const LinearForm& y, int k) {
  const int N = x.cutoff();
  if (y.cutoff() != N) throw std::invalid_argument("mode cutoffs differ");
  // closed-form part summed exactly; single added modes on top
  std::vector<ModeRule> terms;
  for (Family f : kAllFamilies) {
    if (pairs_vanish(f, k)) continue;
    const ModeRule g = pairing_rule(f, k);
    for (const auto& rx : x.part(f).pos.rules)
      for (const auto& ry : y.part(f).neg.rules) terms.push_back(rx * ry * g);
  }
  std::vector<QSeries> c(static_cast<size_t>(N));
  for (int m = 1; m <= N; ++m) {
    QSeries v = sum_value(terms, m);
    for (Family f : kAllFamilies) {
      if (pairs_vanish(f, k)) continue;
      const Side& xs = x.part(f).pos;
      const Side& ys = y.part(f).neg;
      auto ex = xs.extra.find(m);
      auto ey = ys.extra.find(m);
      if (ex == xs.extra.end() && ey == ys.extra.end()) continue;
      const QSeries rx = sum_value(xs.rules, m), ry = sum_value(ys.rules, m);
      const QSeries vx = ex == xs.extra.end() ? QSeries() : ex->second;
      const QSeries vy = ey == ys.extra.end() ? QSeries() : ey->second;
      v += (vx * ry + rx * vy + vx * vy) * oscillator_pairing(f, m, k);
    }
    c[static_cast<size_t>(m - 1)] = std::move(v);
  }
  return c;
}

Contraction contract(const LinearForm& x, const LinearForm& y, int k) {
  const int N = x.cutoff();
  std::vector<QSeries> c = contraction_coefficients(x, y, k);
  ValBound b = contraction_bound(x, y, k);
  Tail above = b.none ? Tail::zero() : Tail::linear(b.slope, b.slope * Rat(N) + b.offset);
  Contraction out{XSeries(0, N, Tail::zero(), above), Rat(0), Rat(0)};
  for (int m = 1; m <= N; ++m) out.log.at(m) = c[static_cast<size_t>(m - 1)];
  zero_mode_exchange(x, y, k, out.q_exp, out.var_exp);
  return out;
}

Current Current::identity(int k, int N) { return single(k, LinearForm(N)); }

Current Current::single(int k, LinearForm form, QSeries coeff, Rat zpow) {
  Current c(k, form.cutoff());
  c.add(VertexTerm{std::move(coeff), std::move(zpow), std::move(form)});
  return c;
}

std::string canonical_key(const VertexTerm& t, int upto) { return "z^" + t.zpow.str() + " " + t.form.key(upto); }

bool same_exponential(const VertexTerm& x, const VertexTerm& y) {
  return x.zpow == y.zpow && same_exponent(x.form, y.form, nullptr);
}

void Current::add(VertexTerm t) {
  if (t.form.cutoff() != N_) throw std::invalid_argument("term cutoff differs from current");
  if (t.coeff.is_zero()) return;
  for (auto it = terms_.begin(); it != terms_.end(); ++it) {
    if (!same_exponential(*it, t)) continue;
    it->coeff += t.coeff;
    if (it->coeff.is_zero()) {
      cancel_prec_ = std::min(cancel_prec_, it->coeff.prec());
      terms_.erase(it);
    }
    return;
  }
  terms_.push_back(std::move(t));
}

Current operator+(const Current& x, const Current& y) {
  if (x.k_ != y.k_) throw LevelMismatch("currents at different levels");
  Current r = x;
  r.cancel_prec_ = std::min(x.cancel_prec_, y.cancel_prec_);
  for (const auto& t : y.terms_) r.add(t);
  return r;
}

Current operator-(const Current& x, const Current& y) { return x + (-y); }

Current Current::operator-() const { return scaled(QSeries(Rat(-1))); }

Current Current::scaled(const QSeries& s) const {
  Current r = *this;
  for (auto& t : r.terms_) t.coeff *= s;
  return r;
}

Current Current::shifted(const Rat& s) const {
  Current r = *this;
  for (auto& t : r.terms_) {
    t.form = t.form.shifted(s);
    t.coeff *= qpow(s * t.zpow);
  }
  return r;
}

Current Current::inverse() const {
  if (terms_.size() != 1) throw std::invalid_argument("only single-term currents are inverted");
  const VertexTerm& t = terms_[0];
  return single(k_, -t.form, t.coeff.inverse(), -t.zpow);
}

std::vector<std::string> Current::keys(int upto) const {
  std::vector<std::string> out;
  for (const auto& t : terms_) out.push_back(canonical_key(t, upto));
  std::sort(out.begin(), out.end());
  return out;
}

std::string Current::str(int upto) const {
  std::vector<std::pair<std::string, std::string>> rows;
  for (const auto& t : terms_) rows.emplace_back(canonical_key(t, upto), t.coeff.str(upto));
  std::sort(rows.begin(), rows.end());
  std::ostringstream os;
  for (const auto& [key, coeff] : rows) os << "(" << coeff << ") " << key << "\n";
  return os.str();
}

Current normal_ordered(const Current& x, const Current& y) {
  if (x.level() != y.level()) throw LevelMismatch("currents at different levels");
  Current r(x.level(), x.cutoff());
  for (const auto& s : x.terms())
    for (const auto& t : y.terms()) r.add(VertexTerm{s.coeff * t.coeff, s.zpow + t.zpow, s.form + t.form});
  return r;
}

Current coincident_product(const Current& x, const Current& y) {
  if (x.level() != y.level()) throw LevelMismatch("currents at different levels");
  const int k = x.level(), N = x.cutoff();
  Current r(k, N);
  for (const auto& s : x.terms()) {
    for (const auto& t : y.terms()) {
      std::vector<QSeries> c = contraction_coefficients(s.form, t.form, k);
      QSeries total = QSeries::zero_to(kExact);
      for (int m = 1; m <= N; ++m) {
        const QSeries& cm = c[static_cast<size_t>(m - 1)];
        if (cm.is_zero() && cm.is_exact()) continue;
        if (cm.valuation() <= 0)
          throw NonconvergentCoincidentProduct("coincident contraction term " + std::to_string(m) +
                                               " has non-positive valuation: " + cm.str());
        total += cm;
      }
      ValBound b = contraction_bound(s.form, t.form, k);
      if (!b.none) {
        if (b.slope <= Rat(0))
          throw NonconvergentCoincidentProduct("coincident contraction tail does not grow in valuation");
        Rat next = b.at(N + 1);
        if (next <= Rat(0)) throw NonconvergentCoincidentProduct("coincident contraction tail has non-positive valuation");
        long long cap = next.ceil() - 1;
        if (cap < total.prec()) total = total.with_prec(static_cast<int>(std::min<long long>(cap, kExact)));
      }
      Rat q_exp, var_exp;
      zero_mode_exchange(s.form, t.form, k, q_exp, var_exp);
      QSeries scalar = s.coeff * t.coeff * qpow(q_exp);
      if (!total.is_zero() || !total.is_exact()) scalar *= total.exp();
      r.add(VertexTerm{scalar, s.zpow + t.zpow + var_exp, s.form + t.form});
    }
  }
  return r;
}

CurrentComparison compare_currents(const Current& x, const Current& y) {
  CurrentComparison out;
  const int upto = qmax_grid();
  if (x.size() != y.size()) {
    out.equal = false;
    out.detail = "term counts differ: " + std::to_string(x.size()) + " vs " + std::to_string(y.size());
    return out;
  }
  for (const auto& s : x.terms()) {
    const VertexTerm* match = nullptr;
    for (const auto& t : y.terms())
      if (same_exponential(s, t)) match = &t;
    if (!match) {
      out.equal = false;
      out.detail = "no counterpart for term " + canonical_key(s, upto);
      return out;
    }
    int fp = kExact;
    same_exponent(s.form, match->form, &fp);
    out.certified_prec = std::min({out.certified_prec, fp, s.coeff.prec(), match->coeff.prec()});
    if (first_difference(s.coeff, match->coeff)) {
      out.equal = false;
      out.detail = "coefficient " + s.coeff.str() + " vs " + match->coeff.str() + " at " + canonical_key(s, upto);
      return out;
    }
  }
  return out;
}

XSeries PairTerm::scalar() const {
  XSeries e = descending ? xs_exp(log.reflected()).reflected() : xs_exp(log);
  return e.scaled(coeff).shifted(x_shift);
}

XSeries PairTerm::inverse_scalar() const {
  XSeries e = descending ? xs_exp((-log).reflected()).reflected() : xs_exp(-log);
  return e.scaled(coeff.inverse()).shifted(-x_shift);
}

std::string PairTerm::key(int upto) const {
  return "z^" + z_total.str() + " {" + at_z.key(upto) + "} {" + at_w.key(upto) + "}";
}

std::vector<PairTerm> multiply(const Current& a, const Current& b, Order order) {
  if (a.level() != b.level()) throw LevelMismatch("currents at different levels");
  const int k = a.level();
  std::vector<PairTerm> out;
  for (size_t i = 0; i < a.terms().size(); ++i) {
    for (size_t j = 0; j < b.terms().size(); ++j) {
      const VertexTerm& s = a.terms()[i];
      const VertexTerm& t = b.terms()[j];
      PairTerm p;
      p.i = static_cast<int>(i);
      p.j = static_cast<int>(j);
      p.at_z = s.form;
      p.at_w = t.form;
      if (order == Order::direct) {
        Contraction con = contract(s.form, t.form, k);
        p.coeff = s.coeff * t.coeff * qpow(con.q_exp);
        p.log = std::move(con.log);
        p.x_shift = to_int(t.zpow, "w power");
        p.z_total = s.zpow + t.zpow + con.var_exp;
      } else {
        Contraction con = contract(t.form, s.form, k);
        p.coeff = s.coeff * t.coeff * qpow(con.q_exp);
        p.log = con.log.reflected();
        p.descending = true;
        p.x_shift = to_int(t.zpow + con.var_exp, "w power");
        p.z_total = s.zpow + t.zpow + con.var_exp;
      }
      out.push_back(std::move(p));
    }
  }
  return out;
}

namespace {

XSeries apply_all(XSeries s, const std::vector<XSeries>& factors) {
  for (const auto& f : factors) s = xs_mul(s, f);
  return s;
}

struct Sides {
  XSeries left, right;
};

Sides cleared_sides(const PairTerm& p, const PairTerm& q, const Rat& sl, const Rat& sr, const ExchangeSpec& spec,
                    const std::vector<XSeries>& cl, const std::vector<XSeries>& cr) {
  if (spec.form == ExchangeForm::ratio && sl != sr) throw std::logic_error("ratio form needs one scale");
  if (spec.form == ExchangeForm::split)
    return {apply_all(p.scalar(), cl), apply_all(q.scalar(), cr).scaled(spec.prefactor)};
  XSeries ratio = xs_mul(p.scalar(), q.inverse_scalar());
  XSeries rhs = XSeries::constant(spec.prefactor);
  return {apply_all(ratio, cl), apply_all(rhs, cr)};
}

const PairTerm* counterpart(const PairTerm& p, const std::vector<PairTerm>& list) {
  for (const auto& q : list)
    if (q.z_total == p.z_total && same_exponent(q.at_z, p.at_z, nullptr) && same_exponent(q.at_w, p.at_w, nullptr))
      return &q;
  return nullptr;
}

}  // namespace

Clearing linear_clearing(const QSeries& a, const QSeries& b) {
  return {[=](int, const QSeries& scale) { return XSeries::polynomial(0, {a, b * scale}); }, Direction::two_sided};
}

Clearing theta_clearing(const QSeries& t, const QSeries& c) {
  return {[=](int radius, const QSeries& scale) { return theta_series_inv(t, c * scale.inverse(), radius); },
          Direction::two_sided};
}

Clearing f_q_clearing(const QSeries& c) {
  return {[=](int radius, const QSeries& scale) { return f_q_series(c * scale, 2 * radius); }, Direction::ascending};
}

Clearing F_qp_clearing(const QSeries& c, int r, int r_star, bool inverted) {
  if (inverted)
    return {[=](int radius, const QSeries& scale) {
              return F_qp_series(c * scale.inverse(), r, r_star, 2 * radius).reflected();
            },
            Direction::descending};
  return {[=](int radius, const QSeries& scale) { return F_qp_series(c * scale, r, r_star, 2 * radius); },
          Direction::ascending};
}

namespace {

// Valuation growth (grid units per power) of the coefficients of x^{dir m},
// estimated as min v_m / m over the stored coefficients known to be nonzero;
// nullopt when none is.  Tails are not used: past the window they only
// reflect the working cap.  Only picks an expansion point, so it need not be
// a rigorous bound.
std::optional<Rat> growth(const XSeries& s, int dir) {
  std::optional<Rat> g;
  const int end = dir > 0 ? s.hi() : -s.lo();
  for (int m = 1; m <= end; ++m) {
    if (!s.contains(dir * m)) continue;
    const QSeries& c = s.at(dir * m);
    if (c.is_zero()) continue;
    Rat v = Rat(c.valuation()) / Rat(m);
    if (!g || v < *g) g = v;
  }
  return g;
}

// Midpoint of the annulus lo < s < hi (grid), snapped to the grid; with one
// bound the point a margin inside it, or 0 when 0 already lies inside.
Rat choose_scale(const std::optional<Rat>& lo, const std::optional<Rat>& hi) {
  const Rat margin(2 * kGridPerQ);
  Rat mid(0);
  if (lo && hi) mid = (*lo + *hi) / Rat(2);
  else if (lo) mid = std::max(Rat(0), *lo + margin);
  else if (hi) mid = std::min(Rat(0), *hi - margin);
  return Rat(mid.floor(), kGridPerQ);
}

struct Annulus {
  std::optional<Rat> lo, hi;
  void ascending(const std::optional<Rat>& g) {
    if (g) lo = lo ? std::max(*lo, -*g) : -*g;
  }
  void descending(const std::optional<Rat>& g) {
    if (g) hi = hi ? std::min(*hi, *g) : *g;
  }
  void clearings(const std::vector<Clearing>& list, int radius) {
    const QSeries one(Rat(1));
    for (const auto& c : list) {
      if (c.dir == Direction::ascending) ascending(growth(c.make(radius, one), +1));
      if (c.dir == Direction::descending) descending(growth(c.make(radius, one), -1));
    }
  }
};

}  // namespace

ExchangeReport verify_exchange_cleared(const Current& a, const Current& b, const ExchangeSpec& spec) {
  if (spec.window < 0 || spec.guard < 0) throw std::invalid_argument("window and guard must be non-negative");
  ExchangeReport rep;
  rep.id = spec.id;
  rep.x_lo = -spec.window;
  rep.x_hi = spec.window;
  rep.guard_checked = spec.check_guard;
  const int T = spec.window + spec.guard;
  const auto ab = multiply(a, b, Order::direct);
  const auto ba = multiply(a, b, Order::reversed);
  rep.terms = static_cast<int>(ab.size());

  // Pair lists for B(q^s w), i.e. with x = q^s y, cached per scale.
  std::map<std::pair<Rat, int>, std::vector<PairTerm>> cache;
  auto pairs_at = [&](const Rat& sc, Order order) -> const std::vector<PairTerm>& {
    auto key = std::make_pair(sc, static_cast<int>(order));
    auto it = cache.find(key);
    if (it == cache.end())
      it = cache.emplace(key, sc.is_zero() ? (order == Order::direct ? ab : ba) : multiply(a, b.shifted(sc), order)).first;
    return it->second;
  };
  auto build = [&](const std::vector<Clearing>& list, int radius, const Rat& sc) {
    std::vector<XSeries> out;
    for (const auto& c : list) out.push_back(c.make(radius, qpow(sc)));
    return out;
  };

  bool equal = true;
  for (size_t idx = 0; idx < ab.size(); ++idx) {
    const PairTerm& p = ab[idx];
    const PairTerm* q = counterpart(p, ba);
    if (!q) {
      rep.keys_match = false;
      equal = false;
      if (rep.mismatch_key.empty())
        rep.mismatch_key = "no reversed counterpart for pair " + std::to_string(p.i) + "," + std::to_string(p.j);
      continue;
    }
    const size_t qidx = static_cast<size_t>(q - ba.data());
    // each side is expanded where all of its one-sided factors converge
    Rat sl, sr;
    if (spec.x_scale) {
      sl = sr = *spec.x_scale;
    } else {
      Annulus left, right, both;
      left.ascending(growth(p.log, +1));
      left.clearings(spec.left, T);
      right.descending(growth(q->log, -1));
      right.clearings(spec.right, T);
      for (const Annulus* side : {&left, &right}) {
        if (side->lo) both.lo = both.lo ? std::max(*both.lo, *side->lo) : *side->lo;
        if (side->hi) both.hi = both.hi ? std::min(*both.hi, *side->hi) : *side->hi;
      }
      // one common annulus avoids rescaling; otherwise each side separately
      if (spec.form == ExchangeForm::ratio || !both.lo || !both.hi || *both.lo < *both.hi) {
        sl = sr = choose_scale(both.lo, both.hi);
      } else {
        sl = choose_scale(left.lo, left.hi);
        sr = choose_scale(right.lo, right.hi);
      }
    }
    const Rat sc = Rat(((sl + sr) / Rat(2) * Rat(kGridPerQ)).floor(), kGridPerQ);
    rep.scales.push_back({sl, sr, sc});
    const PairTerm& pl = pairs_at(sl, Order::direct)[idx];
    const PairTerm& qr = pairs_at(sr, Order::reversed)[qidx];

    auto sides = [&](int radius) {
      Sides s = cleared_sides(pl, qr, sl, sr, spec, build(spec.left, radius, sl), build(spec.right, radius, sr));
      s.left = xs_substitute_scale(s.left, qpow(sc - sl));
      s.right = xs_substitute_scale(s.right, qpow(sc - sr));
      return s;
    };
    WindowComparison cmp;
    Sides s;
    try {
      s = sides(T);
      cmp = compare_on(s.left, s.right, -spec.window, spec.window);
    } catch (const EmptyWindow& e) {
      throw GuardInsufficient(spec.id + ": window not certifiable (" + e.what() + "); enlarge the guard or mode cutoff");
    }
    rep.certified_prec = std::min(rep.certified_prec, cmp.certified_prec);
    if (!cmp.equal && equal) {
      equal = false;
      rep.first_mismatch = cmp.first_mismatch;
      rep.mismatch_key = "pair " + std::to_string(p.i) + "," + std::to_string(p.j);
    }
    if (spec.check_guard) {
      Sides s2 = sides(T + 2);
      bool same = compare_on(s.left, s2.left, -spec.window, spec.window).equal &&
                  compare_on(s.right, s2.right, -spec.window, spec.window).equal;
      rep.guard_sound = rep.guard_sound && same;
    }
  }
  if (rep.keys_match && rep.certified_prec < spec.min_certified)
    throw GuardInsufficient(spec.id + ": certified only through grid order " + std::to_string(rep.certified_prec) +
                            ", need " + std::to_string(spec.min_certified));
  rep.pass = equal && rep.keys_match && rep.guard_sound;
  return rep;
}

}  // namespace eqp
