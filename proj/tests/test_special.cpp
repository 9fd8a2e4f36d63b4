#include <gtest/gtest.h>

#include "eqp/product_oracle.hpp"
#include "eqp/special.hpp"

using namespace eqp;

namespace {

QSeries q(int e) { return qpow(Rat(e)); }

void expect_matches_brute(const XSeries& s, const brute::Poly2& b, int xmax, int qorder) {
  for (int i = 0; i <= xmax; ++i) {
    QSeries ours = s.coeff(i);
    QSeries theirs = b.coeff_series(i);
    ASSERT_GE(ours.prec(), qorder * kGridPerQ) << "x^" << i;
    EXPECT_FALSE(first_difference(ours.with_prec(qorder * kGridPerQ), theirs.with_prec(qorder * kGridPerQ)))
        << "x^" << i << ": " << ours.str(qorder * kGridPerQ) << " vs " << theirs.str(qorder * kGridPerQ);
  }
}

// (t; t)_inf as a q-series
QSeries euler(const QSeries& t) {
  QSeries acc(Rat(1));
  QSeries tn = t;
  while (!tn.is_zero()) {
    acc = acc * (QSeries(Rat(1)) - tn);
    tn = tn * t;
  }
  return acc;
}

}  // namespace

TEST(Pochhammer, EmptyBaseListIsSingleFactor) {
  XSeries s = pochhammer_series({}, 5);
  EXPECT_EQ(s.lo(), 0);
  EXPECT_EQ(s.hi(), 1);
  EXPECT_TRUE(s.above().is_zero());
  EXPECT_TRUE(agree(s.at(1), QSeries(-1)));
}

TEST(Pochhammer, LinearCoefficientIsGeometric) {
  ScopedQmax order(20);
  XSeries s = pochhammer_series({q(2)}, 3);
  EXPECT_TRUE(agree(s.at(1), -(QSeries(1) - q(2)).inverse()));
  EXPECT_THROW(pochhammer_series({q(0)}, 3), NonconvergentBase);
  EXPECT_THROW(pochhammer_series({q(-1)}, 3), NonconvergentBase);
}

TEST(Pochhammer, DoubleProductMatchesBruteForce) {
  ScopedQmax order(24);
  XSeries s = pochhammer_series({q(2), q(4)}, 3);
  brute::Poly2 b = brute::Poly2::one(3, 0, 20);
  brute::multiply_pochhammer(b, 0, {2, 4}, false);
  expect_matches_brute(s, b, 3, 20);
}

TEST(Pochhammer, FunctionalEquation) {
  ScopedQmax order(20);
  const QSeries t = q(3);
  XSeries lhs = pochhammer_series({t}, 8);
  XSeries rhs = xs_mul(XSeries::polynomial(0, {QSeries(1), QSeries(-1)}), pochhammer_series({t}, 8, t));
  auto cmp = compare_on(lhs, rhs, 0, 8);
  EXPECT_TRUE(cmp.equal);
  EXPECT_GE(cmp.certified_prec, 20 * kGridPerQ - 2);
}

TEST(Theta, LeadingCoefficients) {
  ScopedQmax order(20);
  const QSeries c = q(1);
  XSeries th = theta_series(q(4), c, 5);
  EXPECT_TRUE(agree(th.at(0), QSeries(1)));
  EXPECT_TRUE(agree(th.at(1), -c));
  EXPECT_THROW(theta_series(q(0), c, 3), NonconvergentBase);
}

TEST(Theta, TripleProductEqualsPochhammerForm) {
  ScopedQmax order(24);
  const QSeries t = q(4), c = q(1);
  const int radius = 5;
  // the triple-product sum is Theta_t itself: (cx; t)(t/(cx); t)(t; t)
  XSeries sum = theta_series(t, c, radius);
  // (c x; t)(t/(c x); t)
  XSeries left = pochhammer_series({t}, 3 * radius, c);
  XSeries right = pochhammer_series({t}, 3 * radius, t * c.inverse()).reflected();
  XSeries product = xs_mul(left, right).scaled(euler(t));
  auto cmp = compare_on(sum, product, -radius + 2, radius - 2);
  EXPECT_TRUE(cmp.equal);
  EXPECT_GE(cmp.certified_prec, 12 * kGridPerQ);
}

TEST(Theta, QuasiPeriodicity) {
  ScopedQmax order(24);
  const QSeries t = q(2), c = q(1);
  // Theta(t c x) = -(1/(c x)) Theta(c x)
  XSeries lhs = theta_series(t, t * c, 6);
  XSeries rhs = xs_mul(XSeries::monomial(-1, -c.inverse()), theta_series(t, c, 7));
  auto cmp = compare_on(lhs, rhs, -5, 5);
  EXPECT_TRUE(cmp.equal);
}

TEST(Theta, Symmetry) {
  ScopedQmax order(24);
  const QSeries t = q(3);
  // index shift m -> 1 - m: Theta(x) = -x Theta(1/x)
  XSeries lhs = theta_series(t, QSeries(1), 6);
  XSeries rhs = xs_mul(XSeries::monomial(1, QSeries(-1)), theta_series(t, QSeries(1), 7).reflected());
  EXPECT_TRUE(compare_on(lhs, rhs, -5, 5).equal);
  // m -> -m: Theta(x) = Theta(t/x)
  EXPECT_TRUE(compare_on(lhs, theta_series(t, t, 7).reflected(), -5, 5).equal);
}

TEST(Fq, MatchesBruteForceProduct) {
  ScopedQmax order(30);
  XSeries f = f_q_series(QSeries(1), 3);
  brute::Poly2 b = brute::Poly2::one(3, 0, 24);
  brute::multiply_pochhammer(b, 0, {4}, false);
  brute::multiply_pochhammer(b, 4, {4}, false);
  brute::multiply_pochhammer(b, 2, {4}, true);
  brute::multiply_pochhammer(b, 2, {4}, true);
  expect_matches_brute(f, b, 3, 24);
  EXPECT_TRUE(agree(f.at(0), QSeries(1)));
}

TEST(Fq, ClearedIdentity) {
  ScopedQmax order(24);
  const int hi = 6;
  XSeries f = f_q_series(QSeries(1), hi);
  XSeries d = pochhammer_series({q(4)}, hi, q(2));
  XSeries lhs = xs_mul(xs_mul(d, d), f);
  XSeries rhs = xs_mul(pochhammer_series({q(4)}, hi), pochhammer_series({q(4)}, hi, q(4)));
  EXPECT_TRUE(compare_on(lhs, rhs, 0, hi).equal);
}

TEST(Fq, RescaledArgumentMatchesRebuild) {
  ScopedQmax order(24);
  XSeries a = xs_substitute_scale(f_q_series(QSeries(1), 6), q(-1));
  XSeries b = f_q_series(q(-1), 6);
  EXPECT_TRUE(compare_on(a, b, 0, 6).equal);
}

TEST(Fqp, MatchesBruteForceTripleProduct) {
  ScopedQmax order(30);
  XSeries F = F_qp_series(QSeries(1), 3, 2, 3);
  brute::Poly2 b = brute::Poly2::one(3, 0, 24);
  const std::vector<int> bases{4, 6, 4};
  brute::multiply_pochhammer(b, 0, bases, false);
  brute::multiply_pochhammer(b, 4, bases, false);
  brute::multiply_pochhammer(b, 2, bases, true);
  brute::multiply_pochhammer(b, 2, bases, true);
  expect_matches_brute(F, b, 3, 24);
}

TEST(Fqp, FreePDegeneratesToFq) {
  ScopedQmax order(24);
  for (int k : {1, -2}) {
    PSeries F = F_qp_free_p(QSeries(1), k, 12, 2);
    XSeries f = f_q_series(QSeries(1), 12);
    auto cmp = compare_on(F.layer(0), f, 0, 12);
    EXPECT_TRUE(cmp.equal) << "k=" << k;
    EXPECT_GE(cmp.certified_prec, 10 * kGridPerQ);
  }
}

TEST(Fqp, FreePSpecializesToTiedP) {
  ScopedQmax order(16);
  // p = q^{2r}: layers beyond p_max only enter above q^{2r(p_max+1)} less the
  // q^{-2k} drift, so compare below that order
  const int r = 4, k = -2, p_max = 3;
  PSeries F = F_qp_free_p(QSeries(1), k, 4, p_max);
  XSeries tied = F_qp_series(QSeries(1), r, r - k, 4);
  XSeries spec = F.specialize(r);
  for (int m = 0; m <= 4; ++m)
    EXPECT_FALSE(first_difference(spec.at(m).with_prec(2 * r * (p_max + 1) * kGridPerQ - 1),
                                  tied.at(m).with_prec(2 * r * (p_max + 1) * kGridPerQ - 1)))
        << m;
}

TEST(Fqp, SwappingPAndPStarIsSymmetric) {
  ScopedQmax order(20);
  XSeries a = F_qp_series(QSeries(1), 3, 2, 5);
  XSeries b = F_qp_series(QSeries(1), 2, 3, 5);
  EXPECT_TRUE(compare_on(a, b, 0, 5).equal);
}

TEST(C1C2C3, HoldsAtBothParameterSets) {
  ScopedQmax order(24);
  auto a = c1c2c3_identity_check(3, 2, 8);
  EXPECT_TRUE(a.holds);
  auto b = c1c2c3_identity_check(4, 6, 8);
  EXPECT_TRUE(b.holds);
  EXPECT_GE(b.certified_prec, 16 * kGridPerQ);
}

TEST(C1C2C3, PerturbedArgumentFails) {
  ScopedQmax order(24);
  auto a = c1c2c3_identity_check(3, 2, 8, true);
  EXPECT_FALSE(a.holds);
  ASSERT_TRUE(a.first_mismatch.has_value());
  EXPECT_EQ(a.first_mismatch->x_power, 1);
}
