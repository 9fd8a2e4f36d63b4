#include "eqp/relations.hpp"

namespace eqp {

namespace {

QSeries qp(const Rat& e) { return qpow(e); }

ExchangeCase make_case(std::string id, std::string relation, const Current& a, const Current& b,
                       std::vector<Clearing> left, std::vector<Clearing> right, QSeries prefactor, int window,
                       int guard, ExchangeForm form = ExchangeForm::split) {
  ExchangeSpec s;
  s.id = id;
  s.left = std::move(left);
  s.right = std::move(right);
  s.prefactor = std::move(prefactor);
  s.form = form;
  s.window = window;
  s.guard = guard;
  s.check_guard = true;
  // certification targets are enforced by the caller
  s.min_certified = -kExact;
  return ExchangeCase{std::move(id), std::move(relation), a, b, std::move(s)};
}

}  // namespace

std::vector<ExchangeCase> trig_exchange_cases(const RealizationConfig& cfg, int window, int guard) {
  const Rat h(cfg.k, 2), k(cfg.k);
  const QSeries one(Rat(1)), m1(Rat(-1));
  const Current Kp = build_trig(TrigName::K_plus, cfg), Km = build_trig(TrigName::K_minus, cfg);
  const Current Ep = build_trig(TrigName::E_plus, cfg), Em = build_trig(TrigName::E_minus, cfg);
  std::vector<ExchangeCase> out;
  auto add = [&](auto&&... args) { out.push_back(make_case(args..., window, guard)); };
  add("trig.K+K+", "K+(z)K+(w) = K+(w)K+(z)", Kp, Kp, std::vector<Clearing>{}, std::vector<Clearing>{}, one);
  add("trig.K-K-", "K-(z)K-(w) = K-(w)K-(z)", Km, Km, std::vector<Clearing>{}, std::vector<Clearing>{}, one);
  add("trig.K-K+", "K-(z)K+(w) = f_q(q^-k w/z)/f_q(q^k w/z) K+(w)K-(z)", Km, Kp,
      std::vector<Clearing>{f_q_clearing(qp(k))}, std::vector<Clearing>{f_q_clearing(qp(-k))}, one);
  // (z q^{-+k/2} - w)/(z q^{-+k/2 - 1} - w q) written in x = w/z
  add("trig.K+E+", "K+(z)E+(w) = (z q^(-k/2-1) - w q)/(z q^(-k/2) - w) E+(w)K+(z)", Kp, Ep,
      std::vector<Clearing>{linear_clearing(qp(-h), m1)}, std::vector<Clearing>{linear_clearing(qp(-h - 1), -qp(Rat(1)))},
      one);
  add("trig.K-E+", "K-(z)E+(w) = (z q^(k/2-1) - w q)/(z q^(k/2) - w) E+(w)K-(z)", Km, Ep,
      std::vector<Clearing>{linear_clearing(qp(h), m1)}, std::vector<Clearing>{linear_clearing(qp(h - 1), -qp(Rat(1)))},
      one);
  add("trig.K+E-", "K+(z)E-(w) = (z q^(k/2) - w)/(z q^(k/2-1) - w q) E-(w)K+(z)", Kp, Em,
      std::vector<Clearing>{linear_clearing(qp(h - 1), -qp(Rat(1)))}, std::vector<Clearing>{linear_clearing(qp(h), m1)},
      one);
  add("trig.K-E-", "K-(z)E-(w) = (z q^(-k/2) - w)/(z q^(-k/2-1) - w q) E-(w)K-(z)", Km, Em,
      std::vector<Clearing>{linear_clearing(qp(-h - 1), -qp(Rat(1)))},
      std::vector<Clearing>{linear_clearing(qp(-h), m1)}, one);
  add("trig.E+E+", "E+(z)E+(w) = (z q^2 - w)/(z - w q^2) E+(w)E+(z)", Ep, Ep,
      std::vector<Clearing>{linear_clearing(one, -qp(Rat(2)))}, std::vector<Clearing>{linear_clearing(qp(Rat(2)), m1)},
      one);
  add("trig.E-E-", "E-(z)E-(w) = (z - w q^2)/(z q^2 - w) E-(w)E-(z)", Em, Em,
      std::vector<Clearing>{linear_clearing(qp(Rat(2)), m1)}, std::vector<Clearing>{linear_clearing(one, -qp(Rat(2)))},
      one);
  return out;
}

std::vector<ExchangeCase> elliptic_exchange_cases(const RealizationConfig& cfg, int window, int guard) {
  const int r = cfg.r, rs = cfg.r_star();
  const Rat h(cfg.k, 2), k(cfg.k);
  const QSeries p = qp(Rat(2 * r)), ps = qp(Rat(2 * rs)), one(Rat(1));
  const Current kp = build_elliptic(EllipticName::k_plus, cfg), km = build_elliptic(EllipticName::k_minus, cfg);
  const Current e = build_elliptic(EllipticName::e, cfg), f = build_elliptic(EllipticName::f, cfg);
  std::vector<ExchangeCase> out;
  auto add = [&](auto&&... args) { out.push_back(make_case(args..., window, guard)); };
  out.push_back(make_case("ell.k+k+", "k+(z)k+(w) = k+(w)k+(z)", kp, kp, {}, {}, one, window, guard,
                          ExchangeForm::ratio));
  out.push_back(make_case("ell.k-k-", "k-(z)k-(w) = k-(w)k-(z)", km, km, {}, {}, one, window, guard,
                          ExchangeForm::ratio));
  const QSeries ppk = p * ps;
  add("ell.k-k+",
      "k-(z)k+(w) = F(q^-k w/z) F(q^k p p* z/w) / (F(q^k w/z) F(q^-k p p* z/w)) k+(w)k-(z)", km, kp,
      std::vector<Clearing>{F_qp_clearing(qp(k), r, rs, false), F_qp_clearing(ppk * qp(-k), r, rs, true)},
      std::vector<Clearing>{F_qp_clearing(ppk * qp(k), r, rs, true), F_qp_clearing(qp(-k), r, rs, false)}, one);
  add("ell.k+e", "k+(z)e(w) = q Theta_p*(q^(-k/2-2) z/w)/Theta_p*(q^(-k/2) z/w) e(w)k+(z)", kp, e,
      std::vector<Clearing>{theta_clearing(ps, qp(-h))}, std::vector<Clearing>{theta_clearing(ps, qp(-h - 2))},
      qp(Rat(1)));
  add("ell.k-e", "k-(z)e(w) = q Theta_p*(q^(k/2-2) z/w)/Theta_p*(q^(k/2) z/w) e(w)k-(z)", km, e,
      std::vector<Clearing>{theta_clearing(ps, qp(h))}, std::vector<Clearing>{theta_clearing(ps, qp(h - 2))},
      qp(Rat(1)));
  add("ell.k+f", "k+(z)f(w) = q^-1 Theta_p(q^(k/2) z/w)/Theta_p(q^(k/2-2) z/w) f(w)k+(z)", kp, f,
      std::vector<Clearing>{theta_clearing(p, qp(h - 2))}, std::vector<Clearing>{theta_clearing(p, qp(h))},
      qp(Rat(-1)));
  add("ell.k-f", "k-(z)f(w) = q^-1 Theta_p(q^(-k/2) z/w)/Theta_p(q^(-k/2-2) z/w) f(w)k-(z)", km, f,
      std::vector<Clearing>{theta_clearing(p, qp(-h - 2))}, std::vector<Clearing>{theta_clearing(p, qp(-h))},
      qp(Rat(-1)));
  add("ell.ee", "e(z)e(w) = q^-2 Theta_p*(q^2 z/w)/Theta_p*(q^-2 z/w) e(w)e(z)", e, e,
      std::vector<Clearing>{theta_clearing(ps, qp(Rat(-2)))}, std::vector<Clearing>{theta_clearing(ps, qp(Rat(2)))},
      qp(Rat(-2)));
  add("ell.ff", "f(z)f(w) = q^2 Theta_p(q^-2 z/w)/Theta_p(q^2 z/w) f(w)f(z)", f, f,
      std::vector<Clearing>{theta_clearing(p, qp(Rat(2)))}, std::vector<Clearing>{theta_clearing(p, qp(Rat(-2)))},
      qp(Rat(2)));
  return out;
}

}  // namespace eqp
