#include "eqp/wakimoto.hpp"

namespace eqp {

namespace {

using PK = ProfileKind;

LinearForm prof(PK kind, const Rat& shift, int sign, int N) { return build_profile(kind, shift, sign, N); }

Current term(const RealizationConfig& cfg, LinearForm form, QSeries coeff = QSeries(Rat(1))) {
  return Current::single(cfg.k, std::move(form), std::move(coeff));
}

void require_critical(const RealizationConfig& cfg, const char* what) {
  if (cfg.k != -2) throw WrongLevel(std::string(what) + " is defined at k = -2 only (got k = " + std::to_string(cfg.k) + ")");
}

ModeRule rule(Rat c, Rat sigma, std::vector<std::pair<long long, int>> qints, int qq = 0) {
  ModeRule r;
  r.c = std::move(c);
  r.sigma = std::move(sigma);
  r.qints = std::move(qints);
  r.qq = qq;
  return r;
}

LinearForm W_form(WName name, const RealizationConfig& cfg) {
  const int rs = cfg.r_star();
  LinearForm x(cfg.N);
  if (name == WName::W1)
    x.add_rule(Family::a, -1, rule(Rat(-1), Rat(cfg.r), {{1, 1}, {rs, -1}}, 1));
  else
    x.add_rule(Family::b, -1, rule(Rat(1), Rat(cfg.r + 1), {{2, 1}, {rs, -1}}, 1));
  return x;
}

}  // namespace

void RealizationConfig::validate() const {
  if (r < 1) throw InvalidConfig("r must be at least 1");
  if (r_star() < 1) throw InvalidConfig("r* = r - k must be at least 1 (r = " + std::to_string(r) + ", k = " + std::to_string(k) + ")");
  if (N < 1) throw InvalidConfig("mode cutoff N must be at least 1");
}

std::string trig_name(TrigName n) {
  switch (n) {
    case TrigName::K_plus: return "K+";
    case TrigName::K_minus: return "K-";
    case TrigName::E_plus: return "E+";
    case TrigName::E_minus: return "E-";
  }
  return "?";
}

std::string elliptic_name(EllipticName n) {
  switch (n) {
    case EllipticName::k_plus: return "k+";
    case EllipticName::k_minus: return "k-";
    case EllipticName::e: return "e";
    case EllipticName::f: return "f";
    case EllipticName::Psi_plus: return "Psi+";
    case EllipticName::Psi_minus: return "Psi-";
  }
  return "?";
}

Current build_trig(TrigName name, const RealizationConfig& cfg) {
  cfg.validate();
  const int N = cfg.N;
  const Rat h(cfg.k, 2);
  switch (name) {
    case TrigName::K_plus:
      // A-(zq^-2)^-1 exp(-b-(zq^{-k/2-2}))
      return term(cfg, prof(PK::A_minus, Rat(-2), -1, N) + prof(PK::b_minus, -h - Rat(2), -1, N));
    case TrigName::K_minus:
      // A+(z)^-1 exp(-b+(zq^{k/2}))
      return term(cfg, prof(PK::A_plus, Rat(0), -1, N) + prof(PK::b_plus, h, -1, N));
    case TrigName::E_plus: {
      // :exp(b-(z) - (b+c)(zq^-1)): - :exp(b+(z) - (b+c)(zq)):
      Current c = term(cfg, prof(PK::b_minus, Rat(0), 1, N) + prof(PK::bc_sum, Rat(-1), -1, N));
      c.add(VertexTerm{QSeries(Rat(-1)), Rat(0), prof(PK::b_plus, Rat(0), 1, N) + prof(PK::bc_sum, Rat(1), -1, N)});
      return c;
    }
    case TrigName::E_minus: {
      // A+(zq^{k/2}) A+(zq^{k/2+2}) :exp(b+(zq^{k+2}) + (b+c)(zq^{k+1})):
      // - A-(zq^{-k/2}) A-(zq^{-k/2-2}) :exp(b-(zq^{-k-2}) + (b+c)(zq^{-k-1})):
      const Rat k(cfg.k);
      Current c = term(cfg, prof(PK::A_plus, h, 1, N) + prof(PK::A_plus, h + Rat(2), 1, N) +
                                prof(PK::b_plus, k + Rat(2), 1, N) + prof(PK::bc_sum, k + Rat(1), 1, N));
      c.add(VertexTerm{QSeries(Rat(-1)), Rat(0),
                       prof(PK::A_minus, -h, 1, N) + prof(PK::A_minus, -h - Rat(2), 1, N) +
                           prof(PK::b_minus, -k - Rat(2), 1, N) + prof(PK::bc_sum, -k - Rat(1), 1, N)});
      return c;
    }
  }
  throw UnknownKind("unknown trigonometric current");
}

Current drinfeld_K(int sign, const RealizationConfig& cfg) {
  cfg.validate();
  // +-(q - 1/q) [m]/[2m] q^{-+m} H_{-+m} z^{+-m}
  LinearForm x = h_series(-sign, rule(Rat(sign), Rat(-sign), {{1, 1}, {2, -1}}, 1), cfg.k, cfg.N);
  x.part(Family::a).gamma = Rat(sign, 2);
  x.part(Family::b).gamma = Rat(sign);
  return term(cfg, std::move(x));
}

Current build_dressing(DressingName name, const RealizationConfig& cfg) {
  cfg.validate();
  const int r = cfg.r, rs = cfg.r_star(), k = cfg.k, N = cfg.N;
  switch (name) {
    case DressingName::V_plus:
      // -sum [n]/([r* n][2n]) H_{-n} q^{(r*-1)n} z^n
      return term(cfg, h_series(-1, rule(Rat(-1), Rat(rs - 1), {{1, 1}, {rs, -1}, {2, -1}}), k, N));
    case DressingName::V_minus:
      // sum [n]/([r n][2n]) H_n q^{(r+1)n} z^{-n}
      return term(cfg, h_series(+1, rule(Rat(1), Rat(r + 1), {{1, 1}, {r, -1}, {2, -1}}), k, N));
    case DressingName::D_plus:
      // sum 1/[r* n] H_{-n} q^{(r* + k/2)n} z^n
      return term(cfg, h_series(-1, rule(Rat(1), Rat(rs) + Rat(k, 2), {{rs, -1}}), k, N));
    case DressingName::D_minus:
      // -sum 1/[r n] H_n q^{(r - k/2)n} z^{-n}
      return term(cfg, h_series(+1, rule(Rat(-1), Rat(r) - Rat(k, 2), {{r, -1}}), k, N));
  }
  throw UnknownKind("unknown dressing current");
}

Current build_elliptic(EllipticName name, const RealizationConfig& cfg) {
  cfg.validate();
  const Rat k(cfg.k);
  switch (name) {
    case EllipticName::k_plus:
      // V+(z) K+(z) V-(q^k z)
      return coincident_product(
          coincident_product(build_dressing(DressingName::V_plus, cfg), build_trig(TrigName::K_plus, cfg)),
          build_dressing(DressingName::V_minus, cfg).shifted(k));
    case EllipticName::k_minus:
      // V+(q^k z) K-(z) V-(z)
      return coincident_product(
          coincident_product(build_dressing(DressingName::V_plus, cfg).shifted(k), build_trig(TrigName::K_minus, cfg)),
          build_dressing(DressingName::V_minus, cfg));
    case EllipticName::e:
      return coincident_product(build_dressing(DressingName::D_plus, cfg), build_trig(TrigName::E_plus, cfg));
    case EllipticName::f:
      return coincident_product(build_trig(TrigName::E_minus, cfg), build_dressing(DressingName::D_minus, cfg));
    case EllipticName::Psi_plus: {
      // :k-(zq^2)^-1 k-(z)^-1:
      Current km = build_elliptic(EllipticName::k_minus, cfg);
      return normal_ordered(km.shifted(Rat(2)).inverse(), km.inverse());
    }
    case EllipticName::Psi_minus: {
      Current kp = build_elliptic(EllipticName::k_plus, cfg);
      return normal_ordered(kp.shifted(Rat(2)).inverse(), kp.inverse());
    }
  }
  throw UnknownKind("unknown elliptic current");
}

Current build_W(WName name, const RealizationConfig& cfg) {
  cfg.validate();
  return term(cfg, W_form(name, cfg));
}

Current build_ef_normal_ordered(const RealizationConfig& cfg) {
  cfg.validate();
  require_critical(cfg, ":e f:");
  const int N = cfg.N;
  const LinearForm dress = build_dressing(DressingName::D_plus, cfg).terms()[0].form +
                           build_dressing(DressingName::D_minus, cfg).terms()[0].form;
  const LinearForm app = prof(PK::A_plus, Rat(-1), 1, N) + prof(PK::A_plus, Rat(1), 1, N);
  const LinearForm amm = prof(PK::A_minus, Rat(-1), 1, N) + prof(PK::A_minus, Rat(1), 1, N);
  const LinearForm bmz = prof(PK::b_minus, Rat(0), 1, N);
  const LinearForm bpz = prof(PK::b_plus, Rat(0), 1, N);
  const QSeries q = qpow(Rat(1)), qi = qpow(Rat(-1));
  Current c(cfg.k, N);
  c.add(VertexTerm{q, Rat(0), dress + app + bmz + bpz});
  c.add(VertexTerm{qi, Rat(0), dress + amm + bmz + bpz});
  c.add(VertexTerm{-qi, Rat(0), dress + app + prof(PK::b_plus, Rat(-2), 1, N) + bpz});
  c.add(VertexTerm{-q, Rat(0), dress + amm + prof(PK::b_minus, Rat(2), 1, N) + bmz});
  return c;
}

Current build_cartan_display(int which, const RealizationConfig& cfg) {
  cfg.validate();
  require_critical(cfg, "the Cartan product displays");
  const int N = cfg.N;
  if (which == 1) {
    LinearForm x = W_form(WName::W1, cfg).shifted(Rat(-1)) + prof(PK::A_minus, Rat(-1), -1, N) +
                   prof(PK::A_plus, Rat(-1), 1, N) + -W_form(WName::W2, cfg).shifted(Rat(-1)) +
                   prof(PK::b_minus, Rat(0), -1, N) + prof(PK::b_plus, Rat(-2), 1, N);
    return term(cfg, x, qpow(Rat(-1)));
  }
  if (which == 2) {
    LinearForm x = -W_form(WName::W1, cfg).shifted(Rat(1)) + prof(PK::A_minus, Rat(1), 1, N) +
                   prof(PK::A_plus, Rat(1), -1, N) + W_form(WName::W2, cfg).shifted(Rat(1)) +
                   prof(PK::b_minus, Rat(2), 1, N) + prof(PK::b_plus, Rat(0), -1, N);
    return term(cfg, x, qpow(Rat(1)));
  }
  throw std::invalid_argument("Cartan display index must be 1 or 2");
}

Current build_W_display(const RealizationConfig& cfg) {
  Current c = build_l_reduced(cfg);
  return c - build_cartan_display(1, cfg) - build_cartan_display(2, cfg);
}

Current build_kefk(const RealizationConfig& cfg) {
  require_critical(cfg, "k+ :e f: k-");
  Current kp = build_elliptic(EllipticName::k_plus, cfg).shifted(Rat(1));
  Current km = build_elliptic(EllipticName::k_minus, cfg).shifted(Rat(1));
  return coincident_product(coincident_product(kp, build_ef_normal_ordered(cfg)), km);
}

Current build_l_cartan(int which, const RealizationConfig& cfg) {
  require_critical(cfg, "the Cartan products of l");
  Current kp = build_elliptic(EllipticName::k_plus, cfg);
  Current km = build_elliptic(EllipticName::k_minus, cfg);
  if (which == 1) return normal_ordered(kp.shifted(Rat(1)), km.shifted(Rat(-1)).inverse()).scaled(qpow(Rat(-1)));
  if (which == 2) return normal_ordered(km.shifted(Rat(1)), kp.shifted(Rat(3)).inverse()).scaled(qpow(Rat(1)));
  throw std::invalid_argument("Cartan product index must be 1 or 2");
}

Current build_l_cartan_variant(const RealizationConfig& cfg) {
  require_critical(cfg, "the Cartan products of l");
  Current kp = build_elliptic(EllipticName::k_plus, cfg);
  Current km = build_elliptic(EllipticName::k_minus, cfg);
  return normal_ordered(kp.shifted(Rat(3)).inverse(), km.shifted(Rat(-1))).scaled(qpow(Rat(1)));
}

Current build_l(const RealizationConfig& cfg) {
  cfg.validate();
  require_critical(cfg, "l(z)");
  return build_l_cartan(1, cfg) + build_l_cartan(2, cfg) + build_kefk(cfg);
}

Current build_l_reduced(const RealizationConfig& cfg, bool enforce_level) {
  cfg.validate();
  if (enforce_level) require_critical(cfg, "the reduced l(z)");
  const int N = cfg.N;
  Current c = term(cfg, prof(PK::A_minus, Rat(1), 1, N) + prof(PK::A_plus, Rat(1), -1, N), qpow(Rat(-1)));
  c.add(VertexTerm{qpow(Rat(1)), Rat(0), prof(PK::A_minus, Rat(-1), -1, N) + prof(PK::A_plus, Rat(-1), 1, N)});
  return c;
}

}  // namespace eqp
