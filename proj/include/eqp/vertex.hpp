#pragma once

// Normal-ordered exponentials of linear forms, their Wick products and the
// exchange-relation checks built on them.
//
// A VertexTerm is coeff * z^zpow * :exp(form(z)):.  A Current is a finite
// sum of terms in one variable.  Products of currents in two variables are
// lists of PairTerms whose scalars are windowed series in x = w/z.

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "eqp/heisenberg.hpp"
#include "eqp/special.hpp"
#include "eqp/xseries.hpp"

namespace eqp {

struct NonconvergentCoincidentProduct : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct GuardInsufficient : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct LevelMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct VertexTerm {
  QSeries coeff{Rat(1)};
  Rat zpow;
  LinearForm form;
};

// Wick contraction of :exp(X(z)): against :exp(Y(w)):, i.e. the scalar
// exp(log(w/z)) * q^q_exp * z^var_exp with X's annihilation part
// (positive modes, momenta) moved past Y's creation part.
struct Contraction {
  XSeries log;  // sum_{m>=1} c_m x^m on [0, N], rigorous tail above
  Rat q_exp;
  Rat var_exp;
  bool trivial() const;
};
Contraction contract(const LinearForm& x, const LinearForm& y, int k);
// c_m = sum_f alpha^x_{f,m} alpha^y_{f,-m} [f_m, f_-m] for m = 1..N.
std::vector<QSeries> contraction_coefficients(const LinearForm& x, const LinearForm& y, int k);

class Current {
 public:
  Current(int k, int N) : k_(k), N_(N) {}
  static Current identity(int k, int N);
  static Current single(int k, LinearForm form, QSeries coeff = QSeries(Rat(1)), Rat zpow = Rat(0));

  int level() const { return k_; }
  int cutoff() const { return N_; }
  const std::vector<VertexTerm>& terms() const { return terms_; }
  size_t size() const { return terms_.size(); }
  // Lowest precision of any scalar that cancelled during merging.
  int cancellation_prec() const { return cancel_prec_; }

  // Adds a term, merging it into a term with the same exponential part.
  void add(VertexTerm t);
  friend Current operator+(const Current& x, const Current& y);
  friend Current operator-(const Current& x, const Current& y);
  Current operator-() const;
  Current scaled(const QSeries& s) const;
  // X(q^s z)
  Current shifted(const Rat& s) const;
  // Inverse of a single group-like term.
  Current inverse() const;

  // Canonical keys of all terms, sorted.
  std::vector<std::string> keys(int upto) const;
  std::string str(int upto) const;

 private:
  int k_, N_;
  std::vector<VertexTerm> terms_;
  int cancel_prec_ = kExact;
};

// Deterministic serialisation of the exponential part (monomial and form).
std::string canonical_key(const VertexTerm& t, int upto);
// Exponential parts agree within precision.
bool same_exponential(const VertexTerm& x, const VertexTerm& y);

// :x(z) y(z): (forms added, no contraction).
Current normal_ordered(const Current& x, const Current& y);
// x(z) y(z) as an operator product: each pair picks up the contraction
// evaluated at coincident points, which must converge q-adically.
Current coincident_product(const Current& x, const Current& y);

// Structured comparison of two currents term by term.
struct CurrentComparison {
  bool equal = true;
  std::string detail;
  int certified_prec = kExact;
};
CurrentComparison compare_currents(const Current& x, const Current& y);

struct PairTerm {
  int i = 0, j = 0;
  QSeries coeff{Rat(1)};
  XSeries log;  // contraction exponent in x (ascending or descending)
  bool descending = false;
  int x_shift = 0;
  Rat z_total;
  LinearForm at_z, at_w;

  // coeff * x^x_shift * exp(log)
  XSeries scalar() const;
  XSeries inverse_scalar() const;
  std::string key(int upto) const;
};

enum class Order { direct, reversed };
// direct:   A(z) B(w), expanded for |z| > |w|
// reversed: B(w) A(z), expanded for |w| > |z|
std::vector<PairTerm> multiply(const Current& a, const Current& b, Order order = Order::direct);

enum class Direction { ascending, descending, two_sided };

// A clearing factor evaluated at x = scale * y, for a given theta summation
// radius.
struct Clearing {
  std::function<XSeries(int radius, const QSeries& scale)> make;
  Direction dir = Direction::two_sided;
};
// a + b x
Clearing linear_clearing(const QSeries& a, const QSeries& b);
// Theta_t(c / x)
Clearing theta_clearing(const QSeries& t, const QSeries& c);
// f_q(c x)
Clearing f_q_clearing(const QSeries& c);
// F_{q,p}(c x), or F_{q,p}(c / x) when inverted
Clearing F_qp_clearing(const QSeries& c, int r, int r_star, bool inverted);

enum class ExchangeForm {
  split,  // CL * S_ab == pref * CR * S_ba
  ratio   // CL * S_ab / S_ba == pref * CR
};

struct ExchangeSpec {
  std::string id;
  std::vector<Clearing> left, right;
  QSeries prefactor{Rat(1)};
  ExchangeForm form = ExchangeForm::split;
  int window = 8;
  int guard = 2;
  int min_certified = 0;  // grid units
  bool check_guard = false;
  // Expand both sides in y with x = q^x_scale y (equivalently
  // w -> q^x_scale w).  When unset, each side of each pair is expanded at the
  // midpoint of the annulus where all of its one-sided factors converge, and
  // the two sides are compared at the midpoint of those scales.
  std::optional<Rat> x_scale;
};

struct ExchangeReport {
  std::string id;
  bool pass = false;
  bool keys_match = true;
  int terms = 0;
  std::optional<CoefficientMismatch> first_mismatch;
  std::string mismatch_key;
  int certified_prec = kExact;
  int x_lo = 0, x_hi = 0;
  bool guard_checked = false;
  bool guard_sound = true;
  // Per pair: scales of the left side, the right side and the comparison.
  struct Scales {
    Rat left, right, compare;
  };
  std::vector<Scales> scales;
};

ExchangeReport verify_exchange_cleared(const Current& a, const Current& b, const ExchangeSpec& spec);

}  // namespace eqp
