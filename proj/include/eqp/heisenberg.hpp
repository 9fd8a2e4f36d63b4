#pragma once

// The three-boson Heisenberg algebra: mode identifiers, commutators, the
// linear forms that serve as vertex-operator exponents, and the field
// profiles built from them.

#include <array>
#include <stdexcept>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "eqp/qseries.hpp"

namespace eqp {

enum class Family { a = 0, b = 1, c = 2 };
constexpr int kFamilies = 3;
constexpr std::array<Family, kFamilies> kAllFamilies{Family::a, Family::b, Family::c};
const char* family_name(Family f);

struct CutoffExceeded : std::out_of_range {
  using std::out_of_range::out_of_range;
};
struct UnknownKind : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ModeId {
  enum class Kind { osc, P, Q };
  Family family = Family::a;
  Kind kind = Kind::osc;
  int n = 0;

  static ModeId osc(Family f, int n);
  static ModeId P(Family f) { return {f, Kind::P, 0}; }
  static ModeId Q(Family f) { return {f, Kind::Q, 0}; }
  std::string str() const;
};

// [f_m, f_{-m}] for m > 0.
QSeries oscillator_pairing(Family f, int m, int k);
// [P_f, Q_f].
Rat zero_mode_pairing(Family f, int k);
QSeries commutator_value(const ModeId& x, const ModeId& y, int k);

// Lower bound slope*m + offset (grid units) on the q-valuation of the
// coefficient of mode index m >= 1.  `none` marks a side with no modes.
struct ValBound {
  bool none = true;
  Rat slope, offset;

  static ValBound empty() { return {}; }
  static ValBound linear(Rat slope, Rat offset) { return {false, std::move(slope), std::move(offset)}; }
  Rat at(long long m) const { return slope * Rat(m) + offset; }
  // Valid wherever both are.
  friend ValBound bound_min(const ValBound& x, const ValBound& y);
};

// c * q^(sigma m) * (q - 1/q)^qq * prod [a_i m]^e_i * sum_t q^(tau_t m) / m^div_m,
// a closed form for the coefficient of mode index m >= 1.
struct ModeRule {
  Rat c{1};
  Rat sigma{0};
  int qq = 0;
  std::vector<std::pair<long long, int>> qints;
  std::vector<Rat> taus;  // empty means the single term 1
  int div_m = 0;

  QSeries eval(int m) const;
  ValBound bound() const;
  ModeRule times_qpow(const Rat& s) const;
  ModeRule times_qint(long long a, int e) const;
  ModeRule scaled(const Rat& r) const;
  friend ModeRule operator*(const ModeRule& x, const ModeRule& y);
};

// Lower bound on v(sum_i rules_i(m)) (grid) valid for every m >= m0.  The sum
// is expanded exactly as a rational function of q and u = q^m, so
// cancellations between rules are seen; empty when the sum vanishes.
ValBound sum_bound(const std::vector<ModeRule>& rules, long long m0);
// sum_i rules_i(m) to the current truncation order, from the same exact
// expansion, so no precision is lost to cancellation.
QSeries sum_value(const std::vector<ModeRule>& rules, int m);

// [f_m, f_-m] as a closed form in m.
ModeRule pairing_rule(Family f, int k);

// One sign of one family: coefficients for m = 1..N, split into closed forms
// (which also give every coefficient past N) and single added modes, plus a
// bound valid for every m.
struct Side {
  std::vector<QSeries> coef;
  std::vector<ModeRule> rules;
  std::map<int, QSeries> extra;
  ValBound bound;
  bool empty() const { return bound.none; }
};

struct FamilyPart {
  Side pos;  // f_m z^{-m}, m > 0 (annihilators)
  Side neg;  // f_{-m} z^{m}, m > 0 (creators)
  Rat beta;   // coefficient of Q_f
  Rat gamma;  // coefficient of P_f ln q
  Rat delta;  // coefficient of P_f ln z
};

// sum_f [ sum_{0<|n|<=N} alpha_{f,n} f_n z^{-n} + beta Q_f + (gamma ln q + delta ln z) P_f ]
class LinearForm {
 public:
  explicit LinearForm(int N = 0);

  int cutoff() const { return N_; }
  const FamilyPart& part(Family f) const { return fam_[static_cast<int>(f)]; }
  FamilyPart& part(Family f) { return fam_[static_cast<int>(f)]; }
  // Coefficient of f_n z^{-n}; zero outside 0 < |n| <= N.
  QSeries coef(Family f, int n) const;
  bool has_oscillators(Family f) const;
  bool is_zero() const;
  // Families with any content.
  bool involves(Family f) const;

  // Adds rule(|n|) to the coefficient of f_n for every 0 < sign*n <= N.
  void add_rule(Family f, int sign, const ModeRule& rule);
  // Adds a single coefficient to f_n.
  void add_mode(Family f, int n, const QSeries& value);

  LinearForm operator-() const;
  friend LinearForm operator+(const LinearForm& x, const LinearForm& y);
  LinearForm& operator+=(const LinearForm& y) { return *this = *this + y; }
  LinearForm scaled(const Rat& r) const;
  // The same field at argument q^s z.
  LinearForm shifted(const Rat& s) const;

  // Smallest coefficient precision (grid), kExact if none.
  int min_prec() const;
  // Coefficient-wise agreement within the common precision; the lowest
  // precision involved is written to `prec` when given.
  friend bool same_exponent(const LinearForm& x, const LinearForm& y, int* prec);
  // Deterministic text; coefficients are cut at grid exponent `upto`.
  std::string key(int upto) const;

 private:
  int N_;
  std::array<FamilyPart, kFamilies> fam_;
};

enum class ProfileKind { A_plus, A_minus, a_field, a_plus, a_minus, b_field, b_plus, b_minus, c_field, bc_sum };
ProfileKind profile_kind_from_string(const std::string& s);

// The field of the given kind at argument q^shift z, times sign.  `alpha`
// is the parameter of the a/b/c fields (ignored otherwise).
LinearForm build_profile(ProfileKind kind, const Rat& shift, int sign, int N, const Rat& alpha = Rat(0));

// H_n = a_n q^{-|n|} + b_n (q^{-k|n|/2} + q^{-(k/2+2)|n|}) as a form at z = 1.
LinearForm h_mode(int n, int k, int N);

// sum_{m=1..N} rho(m) H_{sign m} z^{-sign m}: the image of an H-mode
// generating series with mode-independent structure rho.
LinearForm h_series(int sign, const ModeRule& rho, int k, int N);

}  // namespace eqp
