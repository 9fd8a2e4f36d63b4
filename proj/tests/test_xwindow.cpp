#include <gtest/gtest.h>

#include "eqp/xseries.hpp"

using namespace eqp;

namespace {

QSeries q(int e) { return qpow(Rat(e)); }

// sum_{m=0..n} q^{s m} x^m as a truncated series with its exact linear tail.
XSeries geometric(int s, int n) {
  XSeries g(0, n, Tail::zero(), Tail::linear(Rat(s * kGridPerQ), Rat(s * kGridPerQ * n)));
  for (int m = 0; m <= n; ++m) g.at(m) = q(s * m);
  return g;
}

// sum_m q^{m^2} x^m on [-t, t] with its quadratic tails
XSeries gaussian(int t) {
  const Rat a(kGridPerQ), b(2 * kGridPerQ * t), c(kGridPerQ * t * t);
  XSeries g(-t, t, Tail::bounded(a, b, c), Tail::bounded(a, b, c));
  for (int m = -t; m <= t; ++m) g.at(m) = q(m * m);
  return g;
}

// Certified coefficients must agree with a longer computation.
void expect_certified(const XSeries& short_run, const XSeries& long_run) {
  for (int m = short_run.lo(); m <= short_run.hi(); ++m) {
    if (!long_run.contains(m)) continue;
    EXPECT_TRUE(agree(short_run.at(m), long_run.at(m))) << "x^" << m;
  }
}

}  // namespace

TEST(XSeries, PolynomialProductIsExact) {
  XSeries a = XSeries::polynomial(0, {QSeries(1), -q(1)});
  XSeries b = XSeries::polynomial(-1, {QSeries(1), QSeries(0), q(2)});
  XSeries p = xs_mul(a, b);
  EXPECT_EQ(p.lo(), -1);
  EXPECT_EQ(p.hi(), 2);
  EXPECT_TRUE(p.below().is_zero() && p.above().is_zero());
  EXPECT_EQ(p.at(-1).str(), "1");
  EXPECT_EQ(p.at(0).str(), "-q");
  EXPECT_EQ(p.at(1).str(), "q^2");
  EXPECT_EQ(p.at(2).str(), "-q^3");
}

TEST(XSeries, GeometricTimesFactorIsOne) {
  ScopedQmax order(20);
  XSeries g = geometric(1, 12);
  XSeries f = XSeries::polynomial(0, {QSeries(1), -q(1)});
  XSeries p = xs_mul(f, g);
  EXPECT_TRUE(agree(p.at(0), QSeries(1)));
  for (int m = 1; m <= 12; ++m) EXPECT_TRUE(agree(p.at(m), QSeries())) << m;
}

TEST(XSeries, InverseMatchesGeometric) {
  ScopedQmax order(20);
  XSeries f = XSeries::polynomial(0, {QSeries(1), -q(2)});
  XSeries inv = xs_inverse(f.restricted(0, 1));
  EXPECT_EQ(inv.lo(), 0);
  // extend by multiplying out: 1/(1 - q^2 x) only certified on the window
  XSeries g = geometric(2, 1);
  for (int m = 0; m <= 1; ++m) EXPECT_TRUE(agree(inv.at(m), g.at(m)));
  XSeries longer(0, 10, Tail::zero(), Tail::zero());
  longer.at(0) = QSeries(1);
  longer.at(1) = -q(2);
  XSeries inv2 = xs_inverse(longer);
  XSeries g2 = geometric(2, 10);
  for (int m = 0; m <= 10; ++m) EXPECT_TRUE(agree(inv2.at(m), g2.at(m)));
}

TEST(XSeries, ReflectedInverse) {
  XSeries f = XSeries::polynomial(-1, {-q(1), QSeries(1)});  // 1 - q/x
  XSeries inv = xs_inverse(f, Expansion::descending);
  EXPECT_EQ(inv.hi(), 0);
  EXPECT_TRUE(inv.above().is_zero());
  EXPECT_TRUE(agree(inv.at(-1), q(1)));
}

TEST(XSeries, ExpOfLinearTerm) {
  ScopedQmax order(25);
  // exp(q x) has coefficients q^m / m!
  XSeries s(1, 8, Tail::zero(), Tail::zero());
  s.at(1) = q(1);
  XSeries e = xs_exp(s);
  Rat fact(1);
  for (int m = 0; m <= 8; ++m) {
    if (m > 0) fact = fact * Rat(m);
    EXPECT_TRUE(agree(e.at(m), QSeries::monomial(fact.inverse(), Rat(m)))) << m;
  }
  EXPECT_THROW(xs_exp(XSeries::constant(QSeries(1))), UnsupportedSupport);
}

TEST(XSeries, SubstituteScale) {
  XSeries g = geometric(1, 4);
  XSeries h = xs_substitute_scale(g, q(2));
  for (int m = 0; m <= 4; ++m) EXPECT_TRUE(agree(h.at(m), q(3 * m)));
  EXPECT_EQ(h.above().b, Rat(3 * kGridPerQ));
  EXPECT_THROW(xs_substitute_scale(g, q(1) + q(2)), NotMonomial);
}

TEST(XSeries, DeltaWindow) {
  XSeries d = delta_window(q(2), -2, 2);
  EXPECT_TRUE(agree(d.at(-2), q(-4)));
  EXPECT_TRUE(agree(d.at(2), q(4)));
  EXPECT_FALSE(d.known(3));
}

TEST(XSeries, UnknownTailsShrinkTheWindow) {
  XSeries a(0, 5, Tail::zero(), Tail::unknown());
  for (int m = 0; m <= 5; ++m) a.at(m) = QSeries(1);
  XSeries b = XSeries::polynomial(0, {QSeries(1), QSeries(1)});
  XSeries p = xs_mul(a, b);
  EXPECT_EQ(p.lo(), 0);
  EXPECT_EQ(p.hi(), 5);
  XSeries c(-3, 0, Tail::unknown(), Tail::zero());
  for (int m = -3; m <= 0; ++m) c.at(m) = QSeries(1);
  EXPECT_THROW(xs_mul(a, c), EmptyWindow);
}

TEST(XSeriesProperty, TailBoundsCertifyTruncatedProducts) {
  ScopedQmax order(30);
  // theta-like two-sided factor against a one-sided series: coefficients
  // certified at a short truncation must match a long truncation.
  for (int t : {3, 4, 6}) {
    XSeries s1 = xs_mul(gaussian(t), geometric(1, 2 * t));
    XSeries s2 = xs_mul(gaussian(t + 6), geometric(1, 2 * t + 12));
    expect_certified(s1, s2);
    EXPECT_LT(s1.at(0).prec(), kExact);
  }
  XSeries r1 = xs_mul(gaussian(4), gaussian(4).reflected());
  XSeries r2 = xs_mul(gaussian(10), gaussian(10));
  expect_certified(r1, r2);
}

TEST(XSeriesProperty, ParallelMatchesSerial) {
  ScopedQmax order(30);
  XSeries a = xs_mul(geometric(1, 8), geometric(2, 9));
  XSeries b = gaussian(7);
  XSeries p = xs_mul(a, b), s = xs_mul_serial(a, b);
  ASSERT_EQ(p.lo(), s.lo());
  ASSERT_EQ(p.hi(), s.hi());
  for (int m = p.lo(); m <= p.hi(); ++m) EXPECT_EQ(p.at(m), s.at(m));
}

TEST(XSeries, AddAlignsWindows) {
  XSeries a = geometric(1, 6);
  XSeries b = XSeries::polynomial(-2, {QSeries(1), QSeries(2)});
  XSeries s = xs_add(a, b);
  EXPECT_EQ(s.lo(), -2);
  EXPECT_EQ(s.hi(), 6);
  EXPECT_TRUE(agree(s.at(-1), QSeries(2)));
  EXPECT_FALSE(s.above().is_zero());
  XSeries c = xs_sub(a, a);
  for (int m = 0; m <= 6; ++m) EXPECT_TRUE(c.at(m).is_zero());
}
