#include "eqp/special.hpp"

#include <algorithm>

namespace eqp {

namespace {

void require_positive_base(const QSeries& t) {
  if (!t.is_monomial() || !t.is_exact()) throw NotMonomial("Pochhammer/theta base must be a q-monomial");
  if (t.val_grid() <= 0) throw NonconvergentBase("base " + t.str() + " has non-positive q-valuation");
}

void require_monomial(const QSeries& c) {
  if (!c.is_monomial() || !c.is_exact()) throw NotMonomial("argument scale must be a q-monomial");
}

Rat rat_pow(const Rat& c, long long m) {
  Rat cm(1);
  Rat base = m >= 0 ? c : c.inverse();
  for (long long i = 0; i < (m >= 0 ? m : -m); ++i) cm = cm * base;
  return cm;
}

QSeries power(const QSeries& mono, long long m) {
  return QSeries::monomial_grid(rat_pow(mono.dense()[0], m), static_cast<int>(mono.val_grid() * m));
}

// -sum_{m=1..hi} (c x)^m / (m prod_i (1 - t_i^m))
XSeries pochhammer_log(const std::vector<QSeries>& bases, int hi, const QSeries& scale) {
  XSeries s(0, std::max(hi, 0), Tail::zero(), Tail::unknown());
  for (int m = 1; m <= hi; ++m) {
    QSeries denom(Rat(1));
    for (const auto& t : bases) denom = denom * (QSeries(Rat(1)) - power(t, m));
    s.at(m) = -(power(scale, m) * denom.inverse()).scaled(Rat(1, m));
  }
  // 1/(1 - t^m) has valuation 0, so v(coeff_m) >= m v(c)
  s.set_above(Tail::linear(Rat(scale.val_grid()), Rat(static_cast<long long>(scale.val_grid()) * hi)));
  return s;
}

}  // namespace

XSeries pochhammer_series(const std::vector<QSeries>& bases, int hi, const QSeries& scale) {
  require_monomial(scale);
  for (const auto& t : bases) require_positive_base(t);
  if (bases.empty()) return XSeries::polynomial(0, {QSeries(Rat(1)), -scale});
  return xs_exp(pochhammer_log(bases, hi, scale));
}

XSeries theta_series(const QSeries& base, const QSeries& scale, int radius) {
  require_positive_base(base);
  require_monomial(scale);
  const long long et = base.val_grid(), ec = scale.val_grid();
  const long long T = radius;
  // v(m) = et m(m-1)/2 + ec m
  Tail above = Tail::bounded(Rat(et, 2), Rat(et * (2 * T - 1), 2) + Rat(ec), Rat(et * T * (T - 1), 2) + Rat(ec * T));
  Tail below = Tail::bounded(Rat(et, 2), Rat(et * (2 * T + 1), 2) - Rat(ec), Rat(et * T * (T + 1), 2) - Rat(ec * T));
  XSeries s(-radius, radius, below, above);
  for (int m = -radius; m <= radius; ++m) {
    long long tri = static_cast<long long>(m) * (m - 1) / 2;
    // one monomial, so a large power of t is not truncated before c^m
    Rat c = rat_pow(base.dense()[0], tri) * rat_pow(scale.dense()[0], m);
    if (m % 2 != 0) c = -c;
    s.at(m) = QSeries::monomial_grid(c, static_cast<int>(et * tri + ec * m));
  }
  return s;
}

XSeries f_q_series(const QSeries& scale, int hi) {
  require_monomial(scale);
  const QSeries q2 = qpow(Rat(2)), q4 = qpow(Rat(4));
  XSeries num = xs_mul(pochhammer_series({q4}, hi, scale), pochhammer_series({q4}, hi, scale * q4));
  XSeries den = pochhammer_series({q4}, hi, scale * q2);
  XSeries inv = xs_inverse(den);
  return xs_mul(num, xs_mul(inv, inv));
}

XSeries F_qp_series(const QSeries& scale, int r, int r_star, int hi) {
  require_monomial(scale);
  if (r < 1 || r_star < 1) throw NonconvergentBase("F_qp needs r, r* >= 1");
  const QSeries q2 = qpow(Rat(2)), q4 = qpow(Rat(4));
  const std::vector<QSeries> bases{q4, qpow(Rat(2 * r)), qpow(Rat(2 * r_star))};
  XSeries num = xs_mul(pochhammer_series(bases, hi, scale), pochhammer_series(bases, hi, scale * q4));
  XSeries inv = xs_inverse(pochhammer_series(bases, hi, scale * q2));
  return xs_mul(num, xs_mul(inv, inv));
}

PSeries::PSeries(int p_max, XSeries constant) {
  if (p_max < 0) throw std::invalid_argument("p_max must be non-negative");
  XSeries zero(constant.lo(), constant.hi(), Tail::zero(), Tail::zero());
  layers_.assign(static_cast<size_t>(p_max + 1), zero);
  layers_[0] = std::move(constant);
}

PSeries operator+(const PSeries& a, const PSeries& b) {
  PSeries s = a;
  for (int j = 0; j <= std::min(a.p_max(), b.p_max()); ++j) s.layer(j) = xs_add(a.layer(j), b.layer(j));
  s.layers_.resize(static_cast<size_t>(std::min(a.p_max(), b.p_max()) + 1));
  return s;
}

PSeries operator*(const PSeries& a, const PSeries& b) {
  const int pm = std::min(a.p_max(), b.p_max());
  PSeries s = a;
  s.layers_.resize(static_cast<size_t>(pm + 1));
  for (int j = 0; j <= pm; ++j) {
    std::optional<XSeries> acc;
    for (int i = 0; i <= j; ++i) {
      XSeries t = xs_mul(a.layer(i), b.layer(j - i));
      acc = acc ? xs_add(*acc, t) : t;
    }
    s.layer(j) = *acc;
  }
  return s;
}

PSeries PSeries::exp() const {
  // exp(s0 + s') = exp(s0) * sum_{j<=p_max} s'^j / j!
  PSeries rest = *this;
  XSeries zero(layer(0).lo(), layer(0).hi(), Tail::zero(), Tail::zero());
  rest.layer(0) = zero;
  PSeries total(p_max(), XSeries::constant(QSeries(Rat(1))));
  PSeries power(p_max(), XSeries::constant(QSeries(Rat(1))));
  Rat fact(1);
  for (int j = 1; j <= p_max(); ++j) {
    power = power * rest;
    fact = fact * Rat(j);
    PSeries term = power;
    for (int i = 0; i <= p_max(); ++i) term.layer(i) = term.layer(i).scaled(QSeries(fact.inverse()));
    total = total + term;
  }
  PSeries head(p_max(), xs_exp(layer(0)));
  return head * total;
}

XSeries PSeries::specialize(int r) const {
  XSeries acc = layer(0);
  for (int j = 1; j <= p_max(); ++j) acc = xs_add(acc, layer(j).scaled(qpow(Rat(2 * r * j))));
  return acc;
}

PSeries F_qp_free_p(const QSeries& scale, int k, int hi, int p_max) {
  require_monomial(scale);
  const QSeries one(Rat(1));
  const QSeries q2 = qpow(Rat(2)), q4 = qpow(Rat(4));
  // log F = -sum_m (cx)^m (1 - q^{2m})^2 / (m (1 - q^{4m}) (1 - p^m)(1 - p^m q^{-2km}))
  auto log_layers = [&]() {
    PSeries out(p_max, XSeries(0, hi, Tail::zero(), Tail::zero()));
    for (int j = 0; j <= p_max; ++j) out.layer(j) = XSeries(0, hi, Tail::zero(), Tail::unknown());
    for (int m = 1; m <= hi; ++m) {
      QSeries qpart = power(scale, m) * (one - power(q2, m)) * (one - power(q2, m)) *
                      (one - power(q4, m)).inverse();
      qpart = -qpart.scaled(Rat(1, m));
      // 1/((1 - p^m)(1 - p^m u)) = sum_{a,b} p^{m(a+b)} u^b, u = q^{-2km}
      for (int j = 0; j * m <= p_max; ++j) {
        QSeries coeff = QSeries::zero_to(kExact);
        for (int b = 0; b <= j; ++b) coeff += qpow(Rat(-2LL * k * m * b));
        out.layer(j * m).at(m) = qpart * coeff;
      }
    }
    // v(coeff_m) >= m (v(c) - 2 max(k,0) p_max) on every layer
    const long long slope = scale.val_grid() - 2LL * kGridPerQ * std::max(k, 0) * p_max;
    for (int j = 0; j <= p_max; ++j) out.layer(j).set_above(Tail::linear(Rat(slope), Rat(slope * hi)));
    return out;
  };
  return log_layers().exp();
}

IdentityReport c1c2c3_identity_check(int r, int r_star, int hi, bool perturb_c2) {
  if (r < 1 || r_star < 1) throw NonconvergentBase("c1c2c3 check needs r, r* >= 1");
  const QSeries p = qpow(Rat(2 * r)), ps = qpow(Rat(2 * r_star));
  const QSeries q4 = qpow(Rat(4)), qm4 = qpow(Rat(-4));
  auto P = [&](const QSeries& base, const QSeries& arg) { return pochhammer_series({base}, hi, arg); };
  // c1 = (p q^4 x; p)(p* q^-4 x; p*) / ((p q^-4 x; p)(p* x; p*))
  // c2 = (p* x; p*) / (p* q^-4 x; p*),  c3 = (p q^-4 x; p) / (p q^4 x; p)
  QSeries c2_arg = perturb_c2 ? ps * qpow(Rat(2)) : ps;
  XSeries num = xs_mul(xs_mul(P(p, p * q4), P(ps, ps * qm4)), xs_mul(P(ps, c2_arg), P(p, p * qm4)));
  XSeries den = xs_mul(xs_mul(P(p, p * qm4), P(ps, ps)), xs_mul(P(ps, ps * qm4), P(p, p * q4)));
  IdentityReport rep;
  rep.x_lo = 0;
  // beyond x^hi the products depend on the factors' tails
  rep.x_hi = hi;
  WindowComparison cmp = compare_on(num, den, rep.x_lo, rep.x_hi);
  rep.holds = cmp.equal;
  rep.first_mismatch = cmp.first_mismatch;
  rep.certified_prec = cmp.certified_prec;
  return rep;
}

}  // namespace eqp
