#include "eqp/xseries.hpp"

#include <algorithm>
#include <sstream>

namespace eqp {

namespace {

// Valuation bound with the two infinities.
struct VB {
  enum Kind { NegInf, Finite, PosInf } kind = PosInf;
  Rat v;
  static VB neg_inf() { return {NegInf, {}}; }
  static VB pos_inf() { return {PosInf, {}}; }
  static VB finite(Rat r) { return {Finite, std::move(r)}; }
};

VB operator+(const VB& x, const VB& y) {
  if (x.kind == VB::PosInf || y.kind == VB::PosInf) return VB::pos_inf();
  if (x.kind == VB::NegInf || y.kind == VB::NegInf) return VB::neg_inf();
  return VB::finite(x.v + y.v);
}

void lower_to(VB& acc, const VB& x) {
  if (x.kind == VB::PosInf || acc.kind == VB::NegInf) return;
  if (x.kind == VB::NegInf || acc.kind == VB::PosInf || x.v < acc.v) acc = x;
}

VB coeff_vb(const QSeries& s) {
  if (s.is_zero() && s.is_exact()) return VB::pos_inf();
  return VB::finite(Rat(s.valuation()));
}

VB tail_vb(const Tail& t, long long d) {
  if (t.is_zero()) return VB::pos_inf();
  if (t.is_unknown()) return VB::neg_inf();
  return VB::finite(t.at(d));
}

int prec_from_bound(const VB& b) {
  if (b.kind == VB::PosInf) return kExact;
  long long p = b.v.ceil() - 1;
  if (p >= kExact) return kExact;
  if (p <= -kExact) return -kExact;
  return static_cast<int>(p);
}

// inf over integer t >= t0 of alpha t^2 + beta t + gamma (alpha >= 0)
std::optional<Rat> quad_inf(const Rat& alpha, const Rat& beta, const Rat& gamma, long long t0) {
  auto f = [&](long long t) { return alpha * Rat(t * t) + beta * Rat(t) + gamma; };
  if (alpha.is_zero()) {
    if (beta.sign() < 0) return std::nullopt;
    return f(t0);
  }
  Rat vertex = -beta / (Rat(2) * alpha);
  long long lo = vertex.floor(), hi = vertex.ceil();
  Rat best = f(t0);
  for (long long t : {lo, hi})
    if (t > t0) best = std::min(best, f(t));
  return best;
}

// Tail for the region beyond `edge` on the upper side (d = m - edge >= 1),
// for a series whose own upper edge is s.hi().
Tail upper_tail_at(const XSeries& s, int edge) {
  const Tail& t = s.above();
  if (edge >= s.hi()) {
    if (t.is_zero() || t.is_unknown()) return t;
    return t.moved_out(edge - s.hi());
  }
  if (t.is_unknown()) return t;
  // stored coefficients edge+1 .. hi become part of the tail
  long long shift = s.hi() - edge;
  bool all_zero = true;
  std::optional<Rat> cmin;
  for (int m = edge + 1; m <= s.hi(); ++m) {
    VB v = coeff_vb(s.at(m));
    if (v.kind == VB::PosInf) continue;
    all_zero = false;
    if (!cmin || v.v < *cmin) cmin = v.v;
  }
  if (t.is_zero()) {
    if (all_zero) return Tail::zero();
    return Tail::bounded(Rat(0), Rat(0), *cmin);
  }
  // old bound in the new distance: Q(d - shift)
  Rat a = t.a, b = t.b - Rat(2) * t.a * Rat(shift), c = t.a * Rat(shift * shift) - t.b * Rat(shift) + t.c;
  for (int m = edge + 1; m <= s.hi(); ++m) {
    VB v = coeff_vb(s.at(m));
    if (v.kind == VB::PosInf) continue;
    long long d = m - edge;
    Rat need = v.v - a * Rat(d * d) - b * Rat(d);
    if (need < c) c = need;
  }
  return Tail::bounded(a, b, c);
}

Tail lower_tail_at(const XSeries& s, int edge) { return upper_tail_at(s.reflected(), -edge); }

XSeries require_nonempty(int lo, int hi, Tail below, Tail above) {
  if (lo > hi) throw EmptyWindow("x-series window is empty");
  return XSeries(lo, hi, std::move(below), std::move(above));
}

// Certified coefficient of x^m in a*b.
std::pair<QSeries, VB> product_coeff(const XSeries& a, const XSeries& b, int m) {
  const int la = a.lo(), ha = a.hi(), lb = b.lo(), hb = b.hi();
  QSeries sum = QSeries::zero_to(kExact);
  int jlo = std::max(la, m - hb), jhi = std::min(ha, m - lb);
  for (int j = jlo; j <= jhi; ++j) {
    const QSeries& x = a.at(j);
    if (x.is_zero() && x.is_exact()) continue;
    const QSeries& y = b.at(m - j);
    if (y.is_zero() && y.is_exact()) continue;
    sum += x * y;
  }
  VB bound = VB::pos_inf();
  // A in window, B past an edge
  if (!b.below().is_zero())
    for (int j = std::max(la, m - lb + 1); j <= ha; ++j) {
      VB va = coeff_vb(a.at(j));
      if (va.kind == VB::PosInf) continue;
      lower_to(bound, va + tail_vb(b.below(), lb - (m - j)));
      if (bound.kind == VB::NegInf) return {sum, bound};
    }
  if (!b.above().is_zero())
    for (int j = la; j <= std::min(ha, m - hb - 1); ++j) {
      VB va = coeff_vb(a.at(j));
      if (va.kind == VB::PosInf) continue;
      lower_to(bound, va + tail_vb(b.above(), (m - j) - hb));
      if (bound.kind == VB::NegInf) return {sum, bound};
    }
  // A past an edge, B in window
  if (!a.below().is_zero())
    for (int j = std::max(m - hb, INT_MIN / 2); j <= std::min(la - 1, m - lb); ++j) {
      VB vb = coeff_vb(b.at(m - j));
      if (vb.kind == VB::PosInf) continue;
      lower_to(bound, tail_vb(a.below(), la - j) + vb);
      if (bound.kind == VB::NegInf) return {sum, bound};
    }
  if (!a.above().is_zero())
    for (int j = std::max(ha + 1, m - hb); j <= m - lb; ++j) {
      VB vb = coeff_vb(b.at(m - j));
      if (vb.kind == VB::PosInf) continue;
      lower_to(bound, tail_vb(a.above(), j - ha) + vb);
      if (bound.kind == VB::NegInf) return {sum, bound};
    }
  // both past an edge: A below with B above, A above with B below
  auto both = [&](const Tail& ta, const Tail& tb, long long delta) {
    if (ta.is_zero() || tb.is_zero()) return;
    if (ta.is_unknown() || tb.is_unknown()) {
      bound = VB::neg_inf();
      return;
    }
    // dA = t, dB = t + delta, t >= max(1, 1 - delta)
    Rat dl(delta);
    Rat alpha = ta.a + tb.a;
    Rat beta = ta.b + tb.b + Rat(2) * tb.a * dl;
    Rat gamma = ta.c + tb.c + tb.a * dl * dl + tb.b * dl;
    auto inf = quad_inf(alpha, beta, gamma, std::max<long long>(1, 1 - delta));
    if (!inf) {
      bound = VB::neg_inf();
      return;
    }
    lower_to(bound, VB::finite(*inf));
  };
  both(a.below(), b.above(), static_cast<long long>(m) - hb - la);
  if (bound.kind == VB::NegInf) return {sum, bound};
  both(a.above(), b.below(), static_cast<long long>(lb) - m + ha);
  return {sum, bound};
}

XSeries assemble_product(const XSeries& a, const XSeries& b, std::vector<QSeries>& vals, std::vector<char>& ok) {
  const int base = a.lo() + b.lo();
  const int n = static_cast<int>(vals.size());
  int best_lo = -1, best_len = 0;
  for (int i = 0; i < n;) {
    if (!ok[static_cast<size_t>(i)]) {
      ++i;
      continue;
    }
    int j = i;
    while (j < n && ok[static_cast<size_t>(j)]) ++j;
    if (j - i > best_len) {
      best_len = j - i;
      best_lo = i;
    }
    i = j;
  }
  if (best_len == 0) throw EmptyWindow("no certifiable coefficient in product window");
  const int lo = base + best_lo, hi = lo + best_len - 1;

  Tail below = Tail::unknown(), above = Tail::unknown();
  if (a.below().is_zero() && b.below().is_zero() && lo == base) below = Tail::zero();
  if (a.above().is_zero() && b.above().is_zero() && hi == a.hi() + b.hi()) above = Tail::zero();
  if (!above.is_zero() && a.below().is_zero() && b.below().is_zero()) {
    auto fa = affine_bound(a), fb = affine_bound(b);
    if (fa && fb) {
      Rat sig = std::min(fa->slope, fb->slope);
      above = Tail::linear(sig, sig * Rat(hi - base) + fa->offset + fb->offset);
    }
  }
  if (!below.is_zero() && a.above().is_zero() && b.above().is_zero()) {
    auto fa = affine_bound(a.reflected()), fb = affine_bound(b.reflected());
    if (fa && fb) {
      Rat sig = std::min(fa->slope, fb->slope);
      int top = a.hi() + b.hi();
      below = Tail::linear(sig, sig * Rat(top - lo) + fa->offset + fb->offset);
    }
  }
  XSeries out(lo, hi, below, above);
  for (int m = lo; m <= hi; ++m) out.at(m) = std::move(vals[static_cast<size_t>(m - base)]);
  return out;
}

}  // namespace

Tail Tail::bounded(Rat a, Rat b, Rat c) {
  if (a.sign() < 0) throw std::invalid_argument("tail bound must be convex");
  return {Kind::Bounded, std::move(a), std::move(b), std::move(c)};
}

std::optional<Rat> Tail::inf_from(long long d0) const {
  if (kind != Kind::Bounded) return std::nullopt;
  return quad_inf(a, b, c, d0);
}

Tail Tail::moved_out(long long s) const {
  if (kind != Kind::Bounded || s == 0) return *this;
  Rat sr(s);
  return bounded(a, Rat(2) * a * sr + b, a * sr * sr + b * sr + c);
}

Tail tail_min(const Tail& x, const Tail& y) {
  if (x.is_unknown() || y.is_unknown()) return Tail::unknown();
  if (x.is_zero()) return y;
  if (y.is_zero()) return x;
  return Tail::bounded(std::min(x.a, y.a), std::min(x.b, y.b), std::min(x.c, y.c));
}

XSeries::XSeries(int lo, int hi, Tail below, Tail above)
    : lo_(lo), hi_(hi), below_(std::move(below)), above_(std::move(above)) {
  if (hi < lo) throw EmptyWindow("x-series window is empty");
  c_.assign(static_cast<size_t>(hi - lo + 1), QSeries());
}

XSeries XSeries::constant(const QSeries& c) { return monomial(0, c); }

XSeries XSeries::monomial(int m, const QSeries& c) {
  XSeries s(m, m, Tail::zero(), Tail::zero());
  s.at(m) = c;
  return s;
}

XSeries XSeries::polynomial(int lo, std::vector<QSeries> coeffs) {
  if (coeffs.empty()) return constant(QSeries());
  XSeries s(lo, lo + static_cast<int>(coeffs.size()) - 1, Tail::zero(), Tail::zero());
  s.c_ = std::move(coeffs);
  return s;
}

const QSeries& XSeries::at(int m) const {
  if (!contains(m)) throw std::out_of_range("x^" + std::to_string(m) + " outside the stored window");
  return c_[static_cast<size_t>(m - lo_)];
}

QSeries& XSeries::at(int m) {
  if (!contains(m)) throw std::out_of_range("x^" + std::to_string(m) + " outside the stored window");
  return c_[static_cast<size_t>(m - lo_)];
}

bool XSeries::known(int m) const {
  return contains(m) || (m < lo_ && below_.is_zero()) || (m > hi_ && above_.is_zero());
}

QSeries XSeries::coeff(int m) const {
  if (contains(m)) return at(m);
  if (known(m)) return QSeries();
  throw EmptyWindow("coefficient of x^" + std::to_string(m) + " is not certified");
}

std::optional<int> XSeries::support_floor() const {
  if (below_.is_zero()) return lo_;
  return std::nullopt;
}

std::optional<int> XSeries::support_ceiling() const {
  if (above_.is_zero()) return hi_;
  return std::nullopt;
}

std::optional<Rat> XSeries::valuation_bound(int m) const {
  VB v;
  if (contains(m))
    v = coeff_vb(at(m));
  else if (m < lo_)
    v = tail_vb(below_, lo_ - m);
  else
    v = tail_vb(above_, m - hi_);
  if (v.kind == VB::NegInf) return std::nullopt;
  if (v.kind == VB::PosInf) return Rat(INT_MAX);
  return v.v;
}

int XSeries::min_prec() const {
  int p = kExact;
  for (const auto& c : c_) p = std::min(p, c.prec());
  return p;
}

XSeries XSeries::operator-() const {
  XSeries s = *this;
  for (auto& c : s.c_) c = -c;
  return s;
}

XSeries XSeries::scaled(const QSeries& f) const {
  XSeries s = *this;
  for (auto& c : s.c_) c = c * f;
  auto shift_tail = [&](Tail& t) {
    if (t.is_zero() || t.is_unknown()) return;
    if (f.is_zero()) return;
    t.c = t.c + Rat(f.valuation());
  };
  shift_tail(s.below_);
  shift_tail(s.above_);
  return s;
}

XSeries XSeries::shifted(int k) const {
  XSeries s = *this;
  s.lo_ += k;
  s.hi_ += k;
  return s;
}

XSeries XSeries::reflected() const {
  XSeries s(-hi_, -lo_, above_, below_);
  for (int m = lo_; m <= hi_; ++m) s.at(-m) = at(m);
  return s;
}

XSeries XSeries::restricted(int lo, int hi) const {
  if (lo < lo_ || hi > hi_) throw std::out_of_range("restriction must lie inside the window");
  XSeries s(lo, hi, lower_tail_at(*this, lo), upper_tail_at(*this, hi));
  for (int m = lo; m <= hi; ++m) s.at(m) = at(m);
  return s;
}

std::string XSeries::str() const {
  std::ostringstream os;
  os << "[x^" << lo_ << " .. x^" << hi_ << "]";
  for (int m = lo_; m <= hi_; ++m) {
    const QSeries& c = at(m);
    if (c.is_zero() && c.is_exact()) continue;
    os << "\n  x^" << m << ": " << c.str();
  }
  return os.str();
}

XSeries xs_add(const XSeries& a, const XSeries& b) {
  int lo, hi;
  Tail below, above;
  if (a.below().is_zero() && b.below().is_zero()) {
    lo = std::min(a.lo(), b.lo());
    below = Tail::zero();
  } else {
    lo = INT_MIN;
    if (!a.below().is_zero()) lo = std::max(lo, a.lo());
    if (!b.below().is_zero()) lo = std::max(lo, b.lo());
    below = tail_min(lower_tail_at(a, lo), lower_tail_at(b, lo));
  }
  if (a.above().is_zero() && b.above().is_zero()) {
    hi = std::max(a.hi(), b.hi());
    above = Tail::zero();
  } else {
    hi = INT_MAX;
    if (!a.above().is_zero()) hi = std::min(hi, a.hi());
    if (!b.above().is_zero()) hi = std::min(hi, b.hi());
    above = tail_min(upper_tail_at(a, hi), upper_tail_at(b, hi));
  }
  XSeries out = require_nonempty(lo, hi, below, above);
  for (int m = lo; m <= hi; ++m) out.at(m) = a.coeff(m) + b.coeff(m);
  return out;
}

XSeries xs_sub(const XSeries& a, const XSeries& b) { return xs_add(a, -b); }

XSeries xs_mul_serial(const XSeries& a, const XSeries& b) {
  const int base = a.lo() + b.lo();
  const int n = a.hi() + b.hi() - base + 1;
  std::vector<QSeries> vals(static_cast<size_t>(n));
  std::vector<char> ok(static_cast<size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    auto [sum, bound] = product_coeff(a, b, base + i);
    if (bound.kind == VB::NegInf) continue;
    vals[static_cast<size_t>(i)] = sum.with_prec(prec_from_bound(bound));
    ok[static_cast<size_t>(i)] = 1;
  }
  return assemble_product(a, b, vals, ok);
}

XSeries xs_mul(const XSeries& a, const XSeries& b) {
  const int base = a.lo() + b.lo();
  const int n = a.hi() + b.hi() - base + 1;
  std::vector<QSeries> vals(static_cast<size_t>(n));
  std::vector<char> ok(static_cast<size_t>(n), 0);
  const int cap = qmax_grid();
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < n; ++i) {
    ScopedThreadQmaxGrid inherit(cap);
    auto [sum, bound] = product_coeff(a, b, base + i);
    if (bound.kind == VB::NegInf) continue;
    vals[static_cast<size_t>(i)] = sum.with_prec(prec_from_bound(bound));
    ok[static_cast<size_t>(i)] = 1;
  }
  return assemble_product(a, b, vals, ok);
}

XSeries xs_arith(const XSeries& a, const XSeries& b, ArithKind kind) {
  switch (kind) {
    case ArithKind::add:
      return xs_add(a, b);
    case ArithKind::sub:
      return xs_sub(a, b);
    case ArithKind::mul:
      return xs_mul(a, b);
  }
  throw std::invalid_argument("unknown arithmetic kind");
}

std::optional<AffineBound> affine_bound(const XSeries& s) {
  if (!s.below().is_zero() || s.above().is_unknown()) return std::nullopt;
  // (offset from floor, valuation) sample points
  std::vector<std::pair<long long, Rat>> pts;
  for (int m = s.lo(); m <= s.hi(); ++m) {
    VB v = coeff_vb(s.at(m));
    if (v.kind == VB::Finite) pts.emplace_back(m - s.lo(), v.v);
  }
  const long long w = s.hi() - s.lo();
  const Tail& t = s.above();
  constexpr long long kProbe = 64;
  if (t.kind == Tail::Kind::Bounded)
    for (long long d = 1; d <= kProbe; ++d) pts.emplace_back(w + d, t.at(d));
  if (pts.empty()) return AffineBound{Rat(0), Rat(kExact)};
  Rat tau = pts[0].second;
  for (auto& p : pts) tau = std::min(tau, p.second);
  std::optional<Rat> sig;
  for (auto& [off, v] : pts) {
    if (off == 0) continue;
    Rat cand = (v - tau) / Rat(off);
    if (!sig || cand < *sig) sig = cand;
  }
  Rat cap(4LL * std::max(qmax_grid(), 1));
  Rat slope = sig ? std::min(*sig, cap) : cap;
  if (t.kind == Tail::Kind::Bounded) {
    // beyond the probes the tail must keep pace with the line
    Rat step = t.at(kProbe + 1) - t.at(kProbe);
    slope = std::min(slope, step);
  }
  return AffineBound{slope, tau};
}

namespace {

// Proportional bound v(coeff_i) >= sigma * i for i >= 1 (coefficients at
// i <= 0 must vanish).
std::optional<Rat> proportional_slope(const XSeries& s) {
  std::optional<Rat> sig;
  auto take = [&](long long i, const Rat& v) {
    Rat c = v / Rat(i);
    if (!sig || c < *sig) sig = c;
  };
  for (int m = s.lo(); m <= s.hi(); ++m) {
    VB v = coeff_vb(s.at(m));
    if (v.kind == VB::PosInf) continue;
    if (m <= 0) throw UnsupportedSupport("series must vanish at non-positive powers");
    take(m, v.v);
  }
  const Tail& t = s.above();
  if (t.is_unknown()) return std::nullopt;
  if (t.kind == Tail::Kind::Bounded) {
    constexpr long long kProbe = 64;
    for (long long d = 1; d <= kProbe; ++d) take(s.hi() + d, t.at(d));
    Rat step = t.at(kProbe + 1) - t.at(kProbe);
    if (!sig || step < *sig) sig = step;
  }
  if (!sig) return Rat(4LL * std::max(qmax_grid(), 1));
  return sig;
}

}  // namespace

XSeries xs_exp(const XSeries& s) {
  if (!s.below().is_zero()) throw UnsupportedSupport("exp needs a support floor");
  for (int m = s.lo(); m <= std::min(0, s.hi()); ++m)
    if (!s.at(m).is_zero()) throw UnsupportedSupport("exp needs a series supported on positive powers");
  const int h = std::max(s.hi(), 0);
  std::vector<QSeries> e(static_cast<size_t>(h + 1));
  e[0] = QSeries(Rat(1));
  for (int n = 1; n <= h; ++n) {
    QSeries acc = QSeries::zero_to(kExact);
    for (int k = std::max(1, s.lo()); k <= n; ++k) {
      const QSeries& sk = s.at(k);
      if (sk.is_zero() && sk.is_exact()) continue;
      acc += sk.scaled(Rat(k)) * e[static_cast<size_t>(n - k)];
    }
    e[static_cast<size_t>(n)] = acc.scaled(Rat(1, n));
  }
  Tail above = Tail::unknown();
  if (auto sig = proportional_slope(s)) above = Tail::linear(*sig, *sig * Rat(h));
  XSeries out(0, h, Tail::zero(), above);
  for (int n = 0; n <= h; ++n) out.at(n) = std::move(e[static_cast<size_t>(n)]);
  if (s.above().is_zero() && h == 0) out.set_above(Tail::zero());
  return out;
}

XSeries xs_inverse(const XSeries& s, Expansion dir) {
  if (dir == Expansion::descending) return xs_inverse(s.reflected(), Expansion::ascending).reflected();
  if (!s.below().is_zero()) throw UnsupportedSupport("ascending inverse needs a support floor");
  int lo = s.lo();
  while (lo <= s.hi() && s.at(lo).is_zero()) ++lo;
  if (lo > s.hi()) throw ZeroSeries("inverse of a vanishing x-series");
  const QSeries u0inv = s.at(lo).inverse();
  const int w = s.hi() - lo;
  std::vector<QSeries> r(static_cast<size_t>(w + 1));
  r[0] = u0inv;
  for (int n = 1; n <= w; ++n) {
    QSeries acc = QSeries::zero_to(kExact);
    for (int k = 1; k <= n; ++k) {
      const QSeries& sk = s.at(lo + k);
      if (sk.is_zero() && sk.is_exact()) continue;
      acc += sk * r[static_cast<size_t>(n - k)];
    }
    r[static_cast<size_t>(n)] = -(acc * u0inv);
  }
  Tail above = Tail::unknown();
  const bool poly_monomial = s.above().is_zero() && w == 0;
  if (poly_monomial) {
    above = Tail::zero();
  } else {
    // normalised tail t_i = s_{lo+i}/u0 with v(t_i) >= sig * i
    XSeries t(0, w, Tail::zero(), Tail::unknown());
    for (int i = 1; i <= w; ++i) t.at(i) = s.at(lo + i) * u0inv;
    const Tail& sa = s.above();
    if (sa.is_zero())
      t.set_above(Tail::zero());
    else if (sa.kind == Tail::Kind::Bounded)
      t.set_above(Tail::bounded(sa.a, sa.b, sa.c + Rat(u0inv.valuation())));
    if (auto sig = proportional_slope(t))
      above = Tail::linear(*sig, *sig * Rat(w) + Rat(u0inv.valuation()));
  }
  XSeries out(-lo, -lo + w, Tail::zero(), above);
  for (int n = 0; n <= w; ++n) out.at(-lo + n) = std::move(r[static_cast<size_t>(n)]);
  return out;
}

XSeries xs_substitute_scale(const XSeries& s, const QSeries& factor) {
  if (!factor.is_monomial() || !factor.is_exact())
    throw NotMonomial("x-substitution factor must be a single q-monomial");
  const int e = factor.val_grid();
  const Rat& c = factor.dense()[0];
  XSeries out = s;
  for (int m = s.lo(); m <= s.hi(); ++m) {
    Rat cm(1);
    Rat base = m >= 0 ? c : c.inverse();
    for (int i = 0; i < std::abs(m); ++i) cm = cm * base;
    out.at(m) = s.at(m).shifted(static_cast<int>(static_cast<long long>(e) * m)).scaled(cm);
  }
  // coefficient rationals do not affect valuations
  auto adjust = [&](Tail t, int edge, int sign) {
    if (t.kind != Tail::Kind::Bounded) return t;
    // m = edge + sign*d  =>  extra valuation e*edge + sign*e*d
    return Tail::bounded(t.a, t.b + Rat(static_cast<long long>(sign) * e), t.c + Rat(static_cast<long long>(e) * edge));
  };
  out.set_below(adjust(s.below(), s.lo(), -1));
  out.set_above(adjust(s.above(), s.hi(), +1));
  return out;
}

XSeries delta_window(const QSeries& a, int low, int high) {
  if (!a.is_monomial() || !a.is_exact()) throw NotMonomial("delta ratio must be a single q-monomial");
  XSeries s(low, high, Tail::unknown(), Tail::unknown());
  const int e = a.val_grid();
  const Rat& c = a.dense()[0];
  for (int m = low; m <= high; ++m) {
    Rat cm(1);
    Rat base = m >= 0 ? c : c.inverse();
    for (int i = 0; i < std::abs(m); ++i) cm = cm * base;
    s.at(m) = QSeries::monomial_grid(cm, static_cast<int>(static_cast<long long>(e) * m));
  }
  return s;
}

WindowComparison compare_on(const XSeries& a, const XSeries& b, int lo, int hi) {
  WindowComparison out;
  for (int m = lo; m <= hi; ++m) {
    QSeries x = a.coeff(m), y = b.coeff(m);
    out.certified_prec = std::min({out.certified_prec, x.prec(), y.prec()});
    if (out.equal) {
      if (auto g = first_difference(x, y)) {
        out.equal = false;
        out.first_mismatch = CoefficientMismatch{m, *g, x.coeff_grid(*g), y.coeff_grid(*g)};
      }
    }
  }
  return out;
}

}  // namespace eqp
