#pragma once

// Brute-force oracle: dense polynomials in x with exact q-series
// coefficients, built by multiplying out products factor by factor.  Shares
// nothing with the series kernels beyond Rat and QSeries construction.

#include <vector>

#include "eqp/qseries.hpp"
#include "eqp/rat.hpp"

namespace brute {

using eqp::Rat;

// coefficient of x^i q^j for 0 <= i <= xmax, qmin <= j <= qmax (integer q powers)
struct Poly2 {
  int xmax, qmin, qmax;
  std::vector<std::vector<Rat>> c;

  Poly2(int xmax_, int qmin_, int qmax_) : xmax(xmax_), qmin(qmin_), qmax(qmax_) {
    c.assign(static_cast<size_t>(xmax + 1), std::vector<Rat>(static_cast<size_t>(qmax - qmin + 1)));
  }
  static Poly2 one(int xmax, int qmin, int qmax) {
    Poly2 p(xmax, qmin, qmax);
    p.at(0, 0) = Rat(1);
    return p;
  }
  Rat& at(int i, int j) { return c[static_cast<size_t>(i)][static_cast<size_t>(j - qmin)]; }
  const Rat& at(int i, int j) const { return c[static_cast<size_t>(i)][static_cast<size_t>(j - qmin)]; }

  // *= (1 + a x^dx q^dq), a rational, dropping terms outside the box
  void mul_binomial(const Rat& a, int dx, int dq) {
    for (int i = xmax; i >= dx; --i)
      for (int j = qmax; j >= qmin; --j) {
        int jj = j - dq;
        if (jj < qmin || jj > qmax) continue;
        const Rat& src = at(i - dx, jj);
        if (!src.is_zero()) at(i, j) += a * src;
      }
  }
  // *= 1 / (1 - x^dx q^dq) = sum_k x^{k dx} q^{k dq}
  void div_binomial(int dx, int dq) {
    for (int i = dx; i <= xmax; ++i)
      for (int j = qmin; j <= qmax; ++j) {
        int jj = j - dq;
        if (jj < qmin || jj > qmax) continue;
        const Rat& src = at(i - dx, jj);
        if (!src.is_zero()) at(i, j) += src;
      }
  }
  eqp::QSeries coeff_series(int i) const {
    std::vector<Rat> v;
    for (int j = qmin; j <= qmax; ++j) {
      v.push_back(at(i, j));
      if (j < qmax) v.emplace_back(0);
    }
    return eqp::QSeries::from_dense(qmin * eqp::kGridPerQ, std::move(v), qmax * eqp::kGridPerQ);
  }
};

// prod over n_i >= 0 of (1 - x q^{scale + sum n_i base_i}), or its inverse
inline void multiply_pochhammer(Poly2& p, int scale, const std::vector<int>& bases, bool inverse, int depth = 0,
                                int acc = 0) {
  if (depth == static_cast<int>(bases.size())) {
    if (inverse)
      p.div_binomial(1, scale + acc);
    else
      p.mul_binomial(Rat(-1), 1, scale + acc);
    return;
  }
  // a factor q^{e} x with e > qmax - qmin can never land inside the box
  for (int n = 0; acc + n * bases[static_cast<size_t>(depth)] + scale <= p.qmax - p.qmin; ++n)
    multiply_pochhammer(p, scale, bases, inverse, depth + 1, acc + n * bases[static_cast<size_t>(depth)]);
}

}  // namespace brute
