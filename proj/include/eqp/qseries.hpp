#pragma once

// Truncated Laurent series in the formal parameter q over exact rationals.
//
// Exponents live on a half-integer grid: the stored integer e stands for
// q^(e/2).  Every series carries an absolute precision `prec` (grid units):
// coefficients of all exponents <= prec are exact, nothing is known above.
// Exact Laurent polynomials carry kExact.  Storage is capped at the global
// order Q_max; anything above is discarded and the precision lowered.

#include <climits>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "eqp/rat.hpp"

namespace eqp {

constexpr int kGridPerQ = 2;
constexpr int kExact = INT_MAX / 4;

struct ZeroSeries : std::domain_error {
  using std::domain_error::domain_error;
};
struct NotMonomial : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Process-wide truncation order, in powers of q.
int qmax();
int qmax_grid();
void set_qmax(int q_units);

// Restores the previous order on scope exit.
class ScopedQmax {
 public:
  explicit ScopedQmax(int q_units) : saved_(qmax()) { set_qmax(q_units); }
  ~ScopedQmax() { set_qmax(saved_); }
  ScopedQmax(const ScopedQmax&) = delete;
  ScopedQmax& operator=(const ScopedQmax&) = delete;

 private:
  int saved_;
};

// Overrides the truncation order (grid units) for the calling thread only,
// for intermediate steps that need more precision than the final result.
class ScopedThreadQmaxGrid {
 public:
  explicit ScopedThreadQmaxGrid(int grid);
  ~ScopedThreadQmaxGrid();
  ScopedThreadQmaxGrid(const ScopedThreadQmaxGrid&) = delete;
  ScopedThreadQmaxGrid& operator=(const ScopedThreadQmaxGrid&) = delete;

 private:
  int saved_;
};

// Converts an exponent in q units to grid units; throws if it is not a
// multiple of 1/2.
int to_grid(const Rat& q_exponent);

class QSeries {
 public:
  QSeries() = default;
  explicit QSeries(const Rat& constant);
  QSeries(long long constant) : QSeries(Rat(constant)) {}  // NOLINT

  // coef * q^(grid/2)
  static QSeries monomial_grid(const Rat& coef, int grid_exp);
  // coef * q^e with e a multiple of 1/2
  static QSeries monomial(const Rat& coef, const Rat& q_exp) {
    return monomial_grid(coef, to_grid(q_exp));
  }
  // From dense coefficients starting at grid exponent `val`.
  static QSeries from_dense(int val, std::vector<Rat> coeffs, int prec = kExact);
  // The zero series known only up to `prec`.
  static QSeries zero_to(int prec);

  bool is_zero() const { return c_.empty(); }
  bool is_exact() const { return prec_ >= kExact; }
  int prec() const { return prec_; }
  // Lowest grid exponent with nonzero coefficient; prec+1 for a zero series.
  int valuation() const { return c_.empty() ? sat_add(prec_, 1) : val_; }
  // Highest stored grid exponent (only meaningful when nonzero).
  int top() const { return val_ + static_cast<int>(c_.size()) - 1; }
  const Rat& coeff_grid(int grid_exp) const;
  Rat coeff(const Rat& q_exp) const { return coeff_grid(to_grid(q_exp)); }
  bool is_monomial() const { return c_.size() == 1; }
  bool is_one() const { return c_.size() == 1 && val_ == 0 && c_[0].is_one() && is_exact(); }
  bool uses_half_powers() const;

  // Lowers the precision (never raises it).
  QSeries with_prec(int prec) const;
  QSeries shifted(int grid) const;  // times q^(grid/2)

  QSeries operator-() const;
  friend QSeries operator+(const QSeries& a, const QSeries& b);
  friend QSeries operator-(const QSeries& a, const QSeries& b);
  friend QSeries operator*(const QSeries& a, const QSeries& b);
  QSeries& operator+=(const QSeries& b) { return *this = *this + b; }
  QSeries& operator-=(const QSeries& b) { return *this = *this - b; }
  QSeries& operator*=(const QSeries& b) { return *this = *this * b; }
  QSeries scaled(const Rat& r) const;

  QSeries inverse() const;
  // exp(s) for a series of strictly positive valuation.
  QSeries exp() const;
  // s^n for n >= 0.
  QSeries pow(int n) const;

  // First grid exponent at which the two series differ within their common
  // precision, or nullopt if they agree there.
  friend std::optional<int> first_difference(const QSeries& a, const QSeries& b);
  // Agreement within the common precision.
  friend bool agree(const QSeries& a, const QSeries& b) { return !first_difference(a, b); }
  // Representation equality, precision included.
  friend bool operator==(const QSeries& a, const QSeries& b);
  friend bool operator!=(const QSeries& a, const QSeries& b) { return !(a == b); }

  // Canonical text, e.g. "1 - q^(1/2) + 3/2*q^2 + O(q^31)".  With `upto`
  // set, terms above that grid exponent are omitted and the O-term reflects
  // the cut.
  std::string str(std::optional<int> upto = std::nullopt) const;

  const std::vector<Rat>& dense() const { return c_; }
  int val_grid() const { return val_; }

  static int sat_add(int a, int b) {
    long long s = static_cast<long long>(a) + b;
    if (s >= kExact) return kExact;
    if (s <= -kExact) return -kExact;
    return static_cast<int>(s);
  }

 private:
  void normalize();

  int val_ = 0;
  std::vector<Rat> c_;
  int prec_ = kExact;
};

std::ostream& operator<<(std::ostream& os, const QSeries& s);

// The q-integer [n] = (q^n - q^-n)/(q - q^-1).
QSeries q_integer(long long n);
// q^e as a series (e may be a half-integer).
inline QSeries qpow(const Rat& e) { return QSeries::monomial(Rat(1), e); }

}  // namespace eqp
