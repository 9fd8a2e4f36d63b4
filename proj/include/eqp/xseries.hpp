#pragma once

// Windowed Laurent series in one ratio variable x with QSeries coefficients.
//
// An XSeries stores the coefficients of x^lo .. x^hi.  What lies beyond each
// edge is described by a Tail:
//   Zero     - certified zero (the edge is a support floor / ceiling),
//   Bounded  - unknown coefficients whose q-valuation (grid units) at
//              distance d >= 1 past the edge is at least a*d^2 + b*d + c,
//   Unknown  - nothing is known.
// Products use the tails to certify each output coefficient: terms left out
// of a convolution lower that coefficient's precision to their valuation
// bound, and a coefficient whose omitted terms are unbounded is not reported.

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "eqp/qseries.hpp"

namespace eqp {

struct EmptyWindow : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UnsupportedSupport : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Tail {
  enum class Kind { Zero, Bounded, Unknown };
  Kind kind = Kind::Unknown;
  Rat a, b, c;  // valuation >= a d^2 + b d + c, a >= 0

  static Tail zero() { return {Kind::Zero, {}, {}, {}}; }
  static Tail unknown() { return {Kind::Unknown, {}, {}, {}}; }
  static Tail bounded(Rat a, Rat b, Rat c);
  static Tail linear(Rat slope, Rat offset) { return bounded(Rat(0), std::move(slope), std::move(offset)); }

  bool is_zero() const { return kind == Kind::Zero; }
  bool is_unknown() const { return kind == Kind::Unknown; }
  // Valuation bound at distance d: +inf (nullopt with zero) handled by caller.
  Rat at(long long d) const { return a * Rat(d * d) + b * Rat(d) + c; }
  // Infimum over integer d >= d0; nullopt when unbounded below.
  std::optional<Rat> inf_from(long long d0) const;
  // The same bound re-expressed for an edge moved outward by s >= 0.
  Tail moved_out(long long s) const;
};

// Minimum of two bounds, valid wherever both are.
Tail tail_min(const Tail& x, const Tail& y);

class XSeries {
 public:
  XSeries() : XSeries(0, 0, Tail::zero(), Tail::zero()) {}
  XSeries(int lo, int hi, Tail below = Tail::unknown(), Tail above = Tail::unknown());

  static XSeries constant(const QSeries& c);
  // Finite Laurent polynomial, zero outside [lo, hi].
  static XSeries polynomial(int lo, std::vector<QSeries> coeffs);
  // x^m (times a scalar), exact.
  static XSeries monomial(int m, const QSeries& c = QSeries(Rat(1)));

  int lo() const { return lo_; }
  int hi() const { return hi_; }
  int width() const { return hi_ - lo_ + 1; }
  bool contains(int m) const { return m >= lo_ && m <= hi_; }
  const QSeries& at(int m) const;
  QSeries& at(int m);
  void set(int m, QSeries v) { at(m) = std::move(v); }
  // Coefficient at any m: stored, certified zero past a Zero tail, or throws.
  QSeries coeff(int m) const;
  bool known(int m) const;

  const Tail& below() const { return below_; }
  const Tail& above() const { return above_; }
  void set_below(Tail t) { below_ = std::move(t); }
  void set_above(Tail t) { above_ = std::move(t); }
  std::optional<int> support_floor() const;
  std::optional<int> support_ceiling() const;

  // Lower bound on the q-valuation (grid) of the coefficient of x^m;
  // nullopt = unbounded below, INT_MAX = certified zero.
  std::optional<Rat> valuation_bound(int m) const;
  // Smallest precision over the stored coefficients.
  int min_prec() const;

  XSeries operator-() const;
  XSeries scaled(const QSeries& s) const;
  // times x^k
  XSeries shifted(int k) const;
  // x -> 1/x
  XSeries reflected() const;
  // Restrict to [lo, hi] (must lie inside the window); dropped coefficients
  // are folded into the tails.
  XSeries restricted(int lo, int hi) const;

  std::string str() const;

 private:
  int lo_, hi_;
  std::vector<QSeries> c_;
  Tail below_, above_;
};

enum class ArithKind { add, sub, mul };

XSeries xs_add(const XSeries& a, const XSeries& b);
XSeries xs_sub(const XSeries& a, const XSeries& b);
// Windowed convolution.  The OpenMP kernel parallelises over output powers;
// xs_mul_serial is the reference kernel it is tested against.
XSeries xs_mul(const XSeries& a, const XSeries& b);
XSeries xs_mul_serial(const XSeries& a, const XSeries& b);
XSeries xs_arith(const XSeries& a, const XSeries& b, ArithKind kind);

// exp(s) for s supported on strictly positive powers; result on [0, s.hi()].
XSeries xs_exp(const XSeries& s);
// 1/s expanded in ascending powers (needs a support floor) or descending
// powers (needs a support ceiling).
enum class Expansion { ascending, descending };
XSeries xs_inverse(const XSeries& s, Expansion dir = Expansion::ascending);
// x -> factor * x, factor a single q-monomial.
XSeries xs_substitute_scale(const XSeries& s, const QSeries& factor);
// sum_{m=low..high} a^m x^m; a must be a q-monomial.
XSeries delta_window(const QSeries& a, int low, int high);

// Linear valuation bound v(coeff_m) >= slope * (m - floor) + offset for a
// series with a support floor, covering the stored window and the tail.
struct AffineBound {
  Rat slope, offset;
};
std::optional<AffineBound> affine_bound(const XSeries& s);

struct CoefficientMismatch {
  int x_power;
  int q_grid;
  Rat lhs, rhs;
};

// Coefficient-wise comparison on [lo, hi] within the common precision.
struct WindowComparison {
  bool equal = true;
  std::optional<CoefficientMismatch> first_mismatch;
  int certified_prec = kExact;  // min common precision (grid) over the range
};
WindowComparison compare_on(const XSeries& a, const XSeries& b, int lo, int hi);

}  // namespace eqp
