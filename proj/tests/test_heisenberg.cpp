#include <gtest/gtest.h>

#include "eqp/heisenberg.hpp"

using namespace eqp;

namespace {

QSeries q(const Rat& e) { return qpow(e); }

// [n] = sum_{j=0}^{n-1} q^{n-1-2j}, written out term by term.
QSeries qint(long long n) {
  QSeries s;
  const long long m = n < 0 ? -n : n;
  for (long long j = 0; j < m; ++j) s += q(Rat(m - 1 - 2 * j));
  return n < 0 ? -s : s;
}

}  // namespace

TEST(Pairings, OscillatorsMatchQuantumIntegers) {
  for (int k : {1, -2, 3}) {
    for (int m = 1; m <= 4; ++m) {
      EXPECT_TRUE(agree(oscillator_pairing(Family::a, m, k), (qint((k + 2) * m) * qint(2 * m)).scaled(Rat(1, m))))
          << "a k=" << k << " m=" << m;
      EXPECT_TRUE(agree(oscillator_pairing(Family::b, m, k), -(qint(m) * qint(m)).scaled(Rat(1, m))));
      EXPECT_TRUE(agree(oscillator_pairing(Family::c, m, k), (qint(m) * qint(m)).scaled(Rat(1, m))));
    }
  }
  EXPECT_THROW(oscillator_pairing(Family::a, 0, 1), std::invalid_argument);
}

TEST(Pairings, AtCriticalLevelTheAFamilyDecouples) {
  for (int m = 1; m <= 5; ++m) EXPECT_TRUE(oscillator_pairing(Family::a, m, -2).is_zero());
  EXPECT_EQ(zero_mode_pairing(Family::a, -2), Rat(0));
}

TEST(Commutators, AntisymmetricAndDiagonal) {
  for (Family f : kAllFamilies) {
    for (int n = -3; n <= 3; ++n) {
      if (n == 0) continue;
      for (int m = -3; m <= 3; ++m) {
        if (m == 0) continue;
        QSeries xy = commutator_value(ModeId::osc(f, n), ModeId::osc(f, m), 1);
        QSeries yx = commutator_value(ModeId::osc(f, m), ModeId::osc(f, n), 1);
        EXPECT_TRUE(agree(xy, -yx));
        if (n + m != 0) EXPECT_TRUE(xy.is_zero());
      }
    }
  }
  EXPECT_TRUE(commutator_value(ModeId::osc(Family::a, 1), ModeId::osc(Family::b, -1), 1).is_zero());
  EXPECT_TRUE(agree(commutator_value(ModeId::P(Family::b), ModeId::Q(Family::b), 1), QSeries(-1)));
  EXPECT_TRUE(agree(commutator_value(ModeId::Q(Family::c), ModeId::P(Family::c), 1), QSeries(-1)));
  EXPECT_TRUE(agree(commutator_value(ModeId::P(Family::a), ModeId::Q(Family::a), 1), QSeries(6)));
}

TEST(ModeRules, EvaluateClosedForm) {
  ScopedQmax order(30);
  ModeRule r;
  r.sigma = Rat(1);
  r.qints = {{2, 1}};
  r.div_m = 1;
  for (int m = 1; m <= 5; ++m) EXPECT_TRUE(agree(r.eval(m), (q(Rat(m)) * qint(2 * m)).scaled(Rat(1, m))));
  ModeRule t;
  t.taus = {Rat(-1), Rat(-3)};
  for (int m = 1; m <= 4; ++m) EXPECT_TRUE(agree(t.eval(m), q(Rat(-m)) + q(Rat(-3 * m))));
}

TEST(ModeRules, CancellationIsExact) {
  ScopedQmax order(20);
  ModeRule r;
  r.qints = {{3, 2}};
  r.sigma = Rat(-2);
  EXPECT_TRUE(sum_bound({r, r.scaled(Rat(-1))}, 1).none);
  EXPECT_TRUE(sum_value({r, r.scaled(Rat(-1))}, 3).is_zero());
  // a bound valid for every m >= 1 really bounds the valuation
  const ValBound b = sum_bound({r}, 1);
  ASSERT_FALSE(b.none);
  for (int m = 1; m <= 6; ++m) EXPECT_LE(b.at(m), Rat(r.eval(m).valuation()));
}

TEST(LinearForms, ShiftMultipliesByPowerOfQ) {
  ScopedQmax order(20);
  LinearForm x(4);
  x.add_mode(Family::b, 2, QSeries(1));
  x.add_mode(Family::c, -3, QSeries(5));
  // X(q^s z) has coefficient alpha_n q^{-s n} on f_n z^{-n}
  LinearForm y = x.shifted(Rat(1, 2));
  EXPECT_TRUE(agree(y.coef(Family::b, 2), q(Rat(-1))));
  EXPECT_TRUE(agree(y.coef(Family::c, -3), q(Rat(3, 2)).scaled(Rat(5))));
  EXPECT_TRUE((x + (-x)).is_zero());
  EXPECT_TRUE(x.coef(Family::a, 1).is_zero());
  EXPECT_TRUE(x.coef(Family::b, 7).is_zero());
}

TEST(HModes, CoefficientsOfTheRealization) {
  ScopedQmax order(30);
  for (int k : {1, -2}) {
    for (int n : {-3, -1, 2}) {
      const int a = n < 0 ? -n : n;
      LinearForm h = h_mode(n, k, 6);
      EXPECT_TRUE(agree(h.coef(Family::a, n), q(Rat(-a))));
      EXPECT_TRUE(agree(h.coef(Family::b, n), q(Rat(-k * a, 2)) + q(Rat(-(k + 4) * a, 2))));
      EXPECT_TRUE(h.coef(Family::c, n).is_zero());
      EXPECT_TRUE(h.coef(Family::a, n + 1).is_zero());
    }
  }
}

TEST(Profiles, UnknownKindRejected) {
  EXPECT_THROW(profile_kind_from_string("nope"), UnknownKind);
  EXPECT_NO_THROW(profile_kind_from_string("b_plus"));
}
