#pragma once

// q-Pochhammer products, the normalised Jacobi theta series and the
// structure functions f_q and F_{q,p}, all as windowed x-series.

#include <stdexcept>
#include <vector>

#include "eqp/xseries.hpp"

namespace eqp {

struct NonconvergentBase : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// (c x; t_1, ..., t_k)_inf on [0, hi], via
//   log (x; t)_inf = -sum_{m>=1} x^m / (m prod_i (1 - t_i^m)).
// With no bases the product is the single factor (1 - c x).
XSeries pochhammer_series(const std::vector<QSeries>& bases, int hi, const QSeries& scale = QSeries(Rat(1)));

// sum_m (-1)^m t^{m(m-1)/2} (c x)^m on [-radius, radius], with exact quadratic
// valuation tails.  By the triple product this is
// Theta_t(c x) = (cx; t)(t/(cx); t)(t; t); every coefficient is a monomial.
XSeries theta_series(const QSeries& base, const QSeries& scale, int radius);

// Theta_t(c/x), the same series in descending powers.
inline XSeries theta_series_inv(const QSeries& base, const QSeries& scale, int radius) {
  return theta_series(base, scale, radius).reflected();
}

// f_q(c x) = (cx; q^4)(cx q^4; q^4) / (cx q^2; q^4)^2 on [0, hi].
XSeries f_q_series(const QSeries& scale, int hi);

// F_{q,p}(c x) with p = q^{2r}, p* = q^{2 r*} on [0, hi].
XSeries F_qp_series(const QSeries& scale, int r, int r_star, int hi);

// Series in a free parameter p (independent of q) with XSeries coefficients.
class PSeries {
 public:
  PSeries(int p_max, XSeries constant);
  int p_max() const { return static_cast<int>(layers_.size()) - 1; }
  const XSeries& layer(int j) const { return layers_.at(static_cast<size_t>(j)); }
  XSeries& layer(int j) { return layers_.at(static_cast<size_t>(j)); }

  friend PSeries operator+(const PSeries& a, const PSeries& b);
  friend PSeries operator*(const PSeries& a, const PSeries& b);
  // exp for a series whose p^0 layer has positive x-support.
  PSeries exp() const;
  // sum_j layer_j * p^j with p = q^{2r}.
  XSeries specialize(int r) const;

 private:
  std::vector<XSeries> layers_;
};

// F_{q,p}(c x) with p free and p* = p q^{-2k}, through p^{p_max}.
PSeries F_qp_free_p(const QSeries& scale, int k, int hi, int p_max);

struct IdentityFailed : std::runtime_error {
  IdentityFailed(const std::string& what, CoefficientMismatch m) : std::runtime_error(what), mismatch(m) {}
  CoefficientMismatch mismatch;
};

struct IdentityReport {
  bool holds = false;
  std::optional<CoefficientMismatch> first_mismatch;
  int certified_prec = 0;
  int x_lo = 0, x_hi = 0;
};

// c1 c2 c3 = 1 in cleared form: the product of the six numerator Pochhammer
// factors equals the product of the six denominator factors.  `perturb_c2`
// shifts the argument of c2's numerator by q^2 (a broken identity).
IdentityReport c1c2c3_identity_check(int r, int r_star, int hi, bool perturb_c2 = false);

}  // namespace eqp
