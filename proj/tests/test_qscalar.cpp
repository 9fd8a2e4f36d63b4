#include <gtest/gtest.h>

#include <random>

#include "eqp/qseries.hpp"
#include "eqp/rat.hpp"

using namespace eqp;

namespace {

QSeries q(int e) { return qpow(Rat(e)); }

QSeries random_series(std::mt19937& rng, int lo, int hi) {
  std::uniform_int_distribution<int> coef(-4, 4);
  std::vector<Rat> c;
  for (int g = lo; g <= hi; ++g) c.emplace_back(coef(rng), 1 + (coef(rng) + 4) % 3);
  return QSeries::from_dense(lo, std::move(c));
}

}  // namespace

TEST(Rat, ArithmeticAndNormalForm) {
  Rat a(6, -4);
  EXPECT_EQ(a.str(), "-3/2");
  EXPECT_EQ(a + Rat(3, 2), Rat(0));
  EXPECT_EQ(Rat(1, 3) * Rat(3), Rat(1));
  EXPECT_TRUE(Rat(5, 7) < Rat(3, 4));
  EXPECT_EQ(Rat(-7, 2).floor(), -4);
  EXPECT_EQ(Rat(-7, 2).ceil(), -3);
}

TEST(Rat, PromotesOnOverflowAndDemotesBack) {
  Rat big(LLONG_MAX);
  Rat sq = big * big;
  EXPECT_FALSE(sq.is_small());
  Rat back = sq / big;
  EXPECT_TRUE(back.is_small());
  EXPECT_EQ(back, big);
  Rat sum = big + big;
  EXPECT_EQ(sum - big, big);
}

TEST(QSeries, SquareOfBinomial) {
  QSeries s = q(-1) + q(1);
  QSeries sq = s * s;
  EXPECT_TRUE(sq.is_exact());
  EXPECT_EQ(sq.str(), "q^-2 + 2 + q^2");
}

TEST(QSeries, InverseOfBinomial) {
  ScopedQmax order(9);
  QSeries inv = (q(-1) + q(1)).inverse();
  EXPECT_EQ(inv.str(), "q - q^3 + q^5 - q^7 + q^9 + O(q^(19/2))");
  EXPECT_EQ(inv.prec(), 9 * kGridPerQ);
}

TEST(QSeries, QIntegers) {
  EXPECT_EQ(q_integer(2).str(), "q^-1 + q");
  EXPECT_EQ(q_integer(-3).str(), "-q^-2 - 1 - q^2");
  EXPECT_TRUE(q_integer(0).is_zero());
  // (q - q^-1)[n] = q^n - q^-n
  for (int n = 1; n < 7; ++n) EXPECT_TRUE(agree((q(1) - q(-1)) * q_integer(n), q(n) - q(-n)));
}

TEST(QSeries, HalfPowers) {
  QSeries h = qpow(Rat(1, 2));
  EXPECT_TRUE(h.uses_half_powers());
  EXPECT_EQ((h * h).str(), "q");
  EXPECT_THROW(qpow(Rat(1, 3)), std::invalid_argument);
}

TEST(QSeries, PrecisionRules) {
  ScopedQmax order(20);
  QSeries a = QSeries::from_dense(0, {Rat(1), Rat(1)}, 10);
  QSeries b = q(3);
  EXPECT_EQ((a * b).prec(), 10 + 6);
  QSeries c = QSeries::from_dense(2, {Rat(1)}, 8);
  EXPECT_EQ((a * c).prec(), std::min(10 + 2, 8 + 0));
  EXPECT_EQ((a + c).prec(), 8);
  EXPECT_THROW(QSeries::zero_to(5).inverse(), ZeroSeries);
}

TEST(QSeries, ExpLogRoundTrip) {
  ScopedQmax order(12);
  // exp(q/(1-q)) vs product over direct recurrence: check exp(a)exp(b)=exp(a+b)
  QSeries a = QSeries::from_dense(2, {Rat(1), Rat(-1, 2), Rat(3)});
  QSeries b = QSeries::from_dense(1, {Rat(2), Rat(0), Rat(1, 5)});
  EXPECT_TRUE(agree(a.exp() * b.exp(), (a + b).exp()));
  EXPECT_THROW(QSeries(Rat(1)).exp(), std::domain_error);
}

TEST(QSeriesProperty, RingAxiomsAndInverse) {
  ScopedQmax order(15);
  std::mt19937 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    QSeries a = random_series(rng, -3, 5), b = random_series(rng, -2, 6), c = random_series(rng, 0, 4);
    EXPECT_TRUE(agree(a * b, b * a));
    EXPECT_TRUE(agree((a * b) * c, a * (b * c)));
    EXPECT_TRUE(agree(a * (b + c), a * b + a * c));
    if (!a.is_zero()) {
      QSeries one = a * a.inverse();
      EXPECT_TRUE(agree(one, QSeries(Rat(1))));
      EXPECT_GE(one.prec(), 0);
    }
    if (!a.is_zero() && !b.is_zero()) EXPECT_EQ((a * b).valuation(), a.valuation() + b.valuation());
  }
}

TEST(QSeries, CapDropsTermsAndLowersPrecision) {
  ScopedQmax order(3);
  QSeries s = q(2) * q(2);
  EXPECT_TRUE(s.is_zero());
  EXPECT_EQ(s.prec(), 3 * kGridPerQ);
  EXPECT_EQ(s.str(), "O(q^(7/2))");
}
