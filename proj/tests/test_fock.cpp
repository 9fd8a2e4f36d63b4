#include <gtest/gtest.h>

#include "eqp/fock.hpp"

using namespace eqp;

namespace {

// Number of 3-colour partitions of every size up to D, by direct enumeration
// of multiplicities.
int count_states(int D) {
  std::vector<long long> p(static_cast<size_t>(D + 1), 0);
  p[0] = 1;
  for (int colour = 0; colour < 3; ++colour)
    for (int m = 1; m <= D; ++m)
      for (int s = m; s <= D; ++s) p[static_cast<size_t>(s)] += p[static_cast<size_t>(s - m)];
  long long total = 0;
  for (auto v : p) total += v;
  return static_cast<int>(total);
}

bool all_pass(const std::vector<OracleReport>& reports) {
  for (const auto& r : reports)
    if (!r.pass) return false;
  return true;
}

}  // namespace

TEST(FockSpace, BasisSize) {
  EXPECT_THROW(FockSpace(1, 0), std::invalid_argument);
  for (int D = 1; D <= 4; ++D) EXPECT_EQ(static_cast<int>(FockSpace(1, D).basis().size()), count_states(D)) << D;
}

TEST(FockSpace, OscillatorsActAsCreationAndAnnihilation) {
  ScopedQmax order(20);
  FockSpace space(1, 3);
  const FockState vac = space.vacuum();
  EXPECT_TRUE(space.apply_mode(Family::c, 1, vac).empty());
  FockVector one = space.apply_mode(Family::c, -1, vac);
  ASSERT_EQ(one.size(), 1u);
  // c_1 c_-1 |0> = [c_1, c_-1] |0> = |0>
  FockVector back = space.apply_mode(Family::c, 1, one.begin()->first.first);
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(back.begin()->first.first, vac);
  EXPECT_TRUE(agree(back.begin()->second * one.begin()->second, QSeries(1)));
}

class HeisenbergMatrices : public ::testing::TestWithParam<int> {};

TEST_P(HeisenbergMatrices, HoldAtDegreeFour) {
  ScopedQmax order(40);
  const RealizationConfig cfg{GetParam(), GetParam() == 1 ? 3 : 4, 20};
  for (const auto& r : check_heisenberg_matrices(cfg, 4, 3)) EXPECT_TRUE(r.pass) << r.id << " " << r.detail;
}

INSTANTIATE_TEST_SUITE_P(Levels, HeisenbergMatrices, ::testing::Values(1, -2));

TEST(HeisenbergMatrices, UnsignedExponentIsNeeded) {
  ScopedQmax order(30);
  const RealizationConfig cfg{1, 3, 20};
  bool failed = false;
  for (const auto& r : check_heisenberg_matrices(cfg, 3, 2, true)) failed = failed || !r.pass;
  EXPECT_TRUE(failed);
}

TEST(DeltaRelations, EEAndEfHold) {
  ScopedQmax order(30);
  EXPECT_TRUE(check_delta_relation(DeltaRelation::ee, RealizationConfig{1, 3, 20}, 3, 3).pass);
  EXPECT_TRUE(check_delta_relation(DeltaRelation::efp, RealizationConfig{-2, 4, 20}, 3, 3).pass);
}

TEST(DeltaRelations, DroppedPrefactorDetected) {
  ScopedQmax order(30);
  EXPECT_FALSE(check_delta_relation(DeltaRelation::ee, RealizationConfig{1, 3, 20}, 3, 3, {}, true).pass);
}

TEST(DeltaRelations, ParallelMatchesSerial) {
  ScopedQmax order(30);
  const RealizationConfig cfg{-2, 4, 20};
  OracleReport a = check_delta_relation(DeltaRelation::efp, cfg, 3, 3, {}, false, true);
  OracleReport b = check_delta_relation(DeltaRelation::efp, cfg, 3, 3, {}, false, false);
  EXPECT_EQ(a.pass, b.pass);
  EXPECT_EQ(a.compared, b.compared);
  EXPECT_EQ(a.certified_prec, b.certified_prec);
}

TEST(VacuumCrossCheck, OracleAgreesWithEngine) {
  ScopedQmax order(30);
  const RealizationConfig cfg{1, 3, 20};
  const Current Ep = build_trig(TrigName::E_plus, cfg), Em = build_trig(TrigName::E_minus, cfg);
  EXPECT_TRUE(vacuum_cross_check("E+E-", Ep, Em, 4, 4).pass);
  EXPECT_FALSE(vacuum_cross_check("E+E-", Ep, Em, 4, 4, qpow(Rat(2))).pass);
}

TEST(Centrality, ReducedLIsCentralAtCriticalLevelOnly) {
  ScopedQmax order(30);
  EXPECT_TRUE(all_pass(check_centrality_matrix(RealizationConfig{-2, 4, 20}, 3, 3, true)));
  EXPECT_FALSE(all_pass(check_centrality_matrix(RealizationConfig{1, 4, 20}, 3, 3, true)));
}

TEST(Centrality, ThreeTermLIsNotCentral) {
  ScopedQmax order(30);
  EXPECT_FALSE(all_pass(check_centrality_matrix(RealizationConfig{-2, 4, 20}, 4, 4)));
}
