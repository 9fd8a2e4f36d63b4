#include <gtest/gtest.h>

#include "eqp/relations.hpp"
#include "eqp/vertex.hpp"
#include "eqp/wakimoto.hpp"

using namespace eqp;

namespace {

QSeries q(const Rat& e) { return qpow(e); }

// [n] for n of either sign, summed term by term.
QSeries qint(long long n) {
  const long long m = n < 0 ? -n : n;
  QSeries s;
  for (long long j = 0; j < m; ++j) s += q(Rat(m - 1 - 2 * j));
  return n < 0 ? -s : s;
}

LinearForm single_mode(Family f, int n, const QSeries& c, int N = 6) {
  LinearForm x(N);
  x.add_mode(f, n, c);
  return x;
}

}  // namespace

TEST(Contract, SingleOscillatorPair) {
  ScopedQmax order(20);
  // exp(alpha c_1 z^-1) against exp(beta c_-1 w): exp(alpha beta [c_1, c_-1] w/z)
  Contraction c = contract(single_mode(Family::c, 1, QSeries(3)), single_mode(Family::c, -1, QSeries(2)), 1);
  EXPECT_TRUE(agree(c.log.at(1), QSeries(6)));
  EXPECT_TRUE(c.log.at(2).is_zero());
  EXPECT_FALSE(c.trivial());
  // b pairs negatively, with [2]^2/2 at m = 2
  Contraction d = contract(single_mode(Family::b, 2, QSeries(1)), single_mode(Family::b, -2, QSeries(1)), 1);
  EXPECT_TRUE(agree(d.log.at(2), -(q(Rat(1)) + q(Rat(-1))).pow(2).scaled(Rat(1, 2))));
}

TEST(Contract, CreatorsOnTheLeftAndOtherFamiliesAreTrivial) {
  ScopedQmax order(20);
  EXPECT_TRUE(contract(single_mode(Family::c, -1, QSeries(1)), single_mode(Family::c, -1, QSeries(1)), 1).trivial());
  EXPECT_TRUE(contract(single_mode(Family::b, 1, QSeries(1)), single_mode(Family::c, -1, QSeries(1)), 1).trivial());
}

TEST(Contract, ZeroModes) {
  ScopedQmax order(20);
  LinearForm x(4), y(4);
  x.part(Family::c).delta = Rat(2);  // 2 P_c ln z
  x.part(Family::c).gamma = Rat(1);  // P_c ln q
  y.part(Family::c).beta = Rat(3);   // 3 Q_c
  Contraction c = contract(x, y, 1);
  EXPECT_EQ(c.var_exp, Rat(6));
  EXPECT_EQ(c.q_exp, Rat(3));
}

TEST(Currents, MergingAndInverse) {
  ScopedQmax order(20);
  LinearForm x = single_mode(Family::b, -1, QSeries(1));
  Current a = Current::single(1, x, QSeries(2));
  Current s = a + a;
  ASSERT_EQ(s.size(), 1u);
  EXPECT_TRUE(agree(s.terms()[0].coeff, QSeries(4)));
  EXPECT_EQ((a - a).size(), 0u);
  Current prod = normal_ordered(a, a.inverse());
  ASSERT_EQ(prod.size(), 1u);
  EXPECT_TRUE(prod.terms()[0].form.is_zero());
  EXPECT_TRUE(agree(prod.terms()[0].coeff, QSeries(1)));
  EXPECT_TRUE(compare_currents(a.scaled(QSeries(2)), s).equal);
  EXPECT_FALSE(compare_currents(a, s).equal);
}

TEST(Currents, KeysIgnoreTermOrder) {
  ScopedQmax order(20);
  Current a = Current::single(1, single_mode(Family::b, -1, QSeries(1)));
  Current b = Current::single(1, single_mode(Family::c, 2, QSeries(1)));
  EXPECT_EQ((a + b).keys(20), (b + a).keys(20));
}

TEST(Multiply, PairCountsAreProducts) {
  ScopedQmax order(20);
  const RealizationConfig cfg{1, 3, 8};
  Current Ep = build_trig(TrigName::E_plus, cfg), Em = build_trig(TrigName::E_minus, cfg);
  auto direct = multiply(Ep, Em, Order::direct);
  auto reversed = multiply(Ep, Em, Order::reversed);
  EXPECT_EQ(direct.size(), Ep.size() * Em.size());
  EXPECT_EQ(reversed.size(), direct.size());
}

class TrigRelations : public ::testing::TestWithParam<int> {};

TEST_P(TrigRelations, AllHold) {
  ScopedQmax order(30);
  const RealizationConfig cfg{GetParam(), GetParam() == 1 ? 3 : 4, 20};
  for (auto& c : trig_exchange_cases(cfg, 6, 2)) {
    ExchangeReport r = verify_exchange_cleared(c.a, c.b, c.spec);
    EXPECT_TRUE(r.pass) << c.id;
    EXPECT_TRUE(r.guard_sound) << c.id;
  }
}

TEST_P(TrigRelations, WrongPrefactorDetected) {
  ScopedQmax order(30);
  const RealizationConfig cfg{GetParam(), GetParam() == 1 ? 3 : 4, 20};
  for (auto& c : trig_exchange_cases(cfg, 6, 2)) {
    c.spec.prefactor = c.spec.prefactor * q(Rat(2));
    EXPECT_FALSE(verify_exchange_cleared(c.a, c.b, c.spec).pass) << c.id;
  }
}

INSTANTIATE_TEST_SUITE_P(Levels, TrigRelations, ::testing::Values(1, -2));

TEST(EllipticRelations, ThetaClearedCasesHold) {
  ScopedQmax order(30);
  for (auto [k, r] : {std::pair{1, 3}, std::pair{-2, 4}}) {
    const RealizationConfig cfg{k, r, 20};
    for (auto& c : elliptic_exchange_cases(cfg, 6, 2)) {
      if (c.id == "ell.k+k+" || c.id == "ell.k-k-") continue;
      ExchangeReport rep = verify_exchange_cleared(c.a, c.b, c.spec);
      EXPECT_TRUE(rep.pass) << c.id << " k=" << k;
    }
  }
}

TEST(EllipticRelations, SameSignContractionClosedForm) {
  for (auto [k, r] : {std::pair{1, 3}, std::pair{-2, 4}, std::pair{1, 5}}) {
    ScopedQmax order(40);
    const RealizationConfig cfg{k, r, 6};
    const int rs = cfg.r_star();
    for (EllipticName name : {EllipticName::k_plus, EllipticName::k_minus}) {
      const LinearForm x = build_elliptic(name, cfg).terms()[0].form;
      const auto c = contraction_coefficients(x, x, k);
      for (int n = 1; n <= 3; ++n) {
        const QSeries expected =
            -(qint(n) * qint(n) * qint(static_cast<long long>(k) * n) * (qint(r * n) * qint(rs * n) * qint(2 * n)).inverse())
                 .scaled(Rat(1, n));
        EXPECT_TRUE(agree(c[static_cast<size_t>(n - 1)], expected)) << elliptic_name(name) << " k=" << k << " n=" << n;
      }
    }
  }
}

// Same-sign k currents do not commute: the contraction is
// c_n = -[n]^2 [kn] / (n [rn] [r*n] [2n]) from each side, and at k = 1, r = 3
// the x^-n coefficient of the ratio starts at q^{4n}.
TEST(EllipticRelations, SameSignCartanCurrentsDoNotCommute) {
  ScopedQmax order(30);
  const RealizationConfig cfg{1, 3, 20};
  for (auto& c : elliptic_exchange_cases(cfg, 6, 2)) {
    if (c.id != "ell.k+k+" && c.id != "ell.k-k-") continue;
    ExchangeReport rep = verify_exchange_cleared(c.a, c.b, c.spec);
    EXPECT_FALSE(rep.pass) << c.id;
    ASSERT_TRUE(rep.first_mismatch) << c.id;
    const int n = -rep.first_mismatch->x_power;
    ASSERT_GT(n, 0);
    EXPECT_EQ(rep.first_mismatch->q_grid, 4 * n * kGridPerQ) << c.id;
  }
}
