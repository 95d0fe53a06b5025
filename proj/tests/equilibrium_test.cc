// Copyright 2026 The dolab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <random>

#include "dolab/equilibrium.h"
#include "dolab/errors.h"
#include "dolab/families.h"
#include "dolab/game_oracle.h"
#include "test_util.h"

namespace dolab {
namespace {

using testing::MatrixOf;

Rational RowValue(const NormalFormGame& g, const std::vector<Rational>& row, int c) {
  Rational v = 0;
  for (int r = 0; r < g.rows(); ++r) v += row[r] * g.payoff1(r, c);
  return v;
}

Rational ColValue(const NormalFormGame& g, const std::vector<Rational>& col, int r) {
  Rational v = 0;
  for (int c = 0; c < g.cols(); ++c) v += col[c] * g.payoff1(r, c);
  return v;
}

TEST(ZeroSumTest, MatchingPenniesIsUniform) {
  EquilibriumResult e = SolveZeroSum(testing::MatchingPennies());
  EXPECT_EQ(e.value1, 0);
  EXPECT_EQ(e.row, (std::vector<Rational>{MakeRational(1, 2), MakeRational(1, 2)}));
  EXPECT_EQ(e.col, (std::vector<Rational>{MakeRational(1, 2), MakeRational(1, 2)}));
}

TEST(ZeroSumTest, BiggerNumberMatrixHasPureTop) {
  EquilibriumResult e = SolveZeroSum(BiggerNumberMatrix(4));
  EXPECT_EQ(e.value1, 0);
  EXPECT_EQ(e.row, (std::vector<Rational>{0, 0, 0, 1}));
  EXPECT_EQ(e.col, (std::vector<Rational>{0, 0, 0, 1}));
}

TEST(ZeroSumTest, MatchingPenniesChainValue) {
  NormalFormGame nfg = InducedNormalForm(MatchingPenniesChain(3));
  EXPECT_EQ(SolveZeroSum(nfg).value1, MakeRational(2, 3));
}

TEST(ZeroSumTest, RejectsGeneralSum) {
  try {
    SolveZeroSum(IncrementingMatrix(4));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotZeroSum);
  }
}

// Property: on random matrices the row strategy guarantees the value against
// every column and the column strategy holds every row to it.
TEST(ZeroSumTest, MinimaxDualityOnRandomMatrices) {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<int> entry(-5, 5);
  std::uniform_int_distribution<int> dim(1, 5);
  for (int trial = 0; trial < 60; ++trial) {
    const int rows = dim(rng);
    const int cols = dim(rng);
    Matrix m(rows, cols);
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < cols; ++c) m(r, c) = entry(rng);
    }
    NormalFormGame g = NormalFormGame::ZeroSum(m);
    for (const EquilibriumResult& e : {SolveZeroSum(g), SolveZeroSumLexicographic(g)}) {
      EXPECT_EQ(e.value1, -e.value2);
      for (int c = 0; c < cols; ++c) EXPECT_GE(RowValue(g, e.row, c), e.value1);
      for (int r = 0; r < rows; ++r) EXPECT_LE(ColValue(g, e.col, r), e.value1);
      Improvements impr = MatrixImprovements(g, e.row, e.col);
      EXPECT_EQ(impr.gap, 0);
    }
  }
}

TEST(ZeroSumTest, LexicographicPrefersEarlierStrategies) {
  // Every profile is optimal: the lexicographic choice is pure on the first.
  NormalFormGame zeros = NormalFormGame::ZeroSum(Matrix(2, 2));
  EquilibriumResult e = SolveZeroSumLexicographic(zeros);
  EXPECT_EQ(e.row, (std::vector<Rational>{1, 0}));
  EXPECT_EQ(e.col, (std::vector<Rational>{1, 0}));
}

TEST(UniquenessTest, MatchingPenniesIsUnique) {
  EXPECT_TRUE(IsUniqueZeroSumEquilibrium(testing::MatchingPennies()).unique);
  EXPECT_TRUE(IsUniqueZeroSumEquilibrium(testing::RockPaperScissors()).unique);
}

TEST(UniquenessTest, AllZerosIsNotUnique) {
  UniquenessCertificate cert = IsUniqueZeroSumEquilibrium(NormalFormGame::ZeroSum(Matrix(2, 2)));
  EXPECT_FALSE(cert.unique);
  ASSERT_TRUE(cert.witness_player.has_value());
  EXPECT_EQ(cert.witness.size(), 2u);
}

TEST(UniquenessTest, WeakBiggerNumberMetaGameHasManyColumnStrategies) {
  NormalFormGame meta = WeakBiggerNumberMatrix(4).Restricted({0}, {0, 1, 2});
  UniquenessCertificate cert = IsUniqueZeroSumEquilibrium(meta);
  EXPECT_FALSE(cert.unique);
  ASSERT_TRUE(cert.witness_player.has_value());
  EXPECT_EQ(*cert.witness_player, Player::kTwo);
  EXPECT_EQ(cert.witness[0], 0);
}

TEST(BimatrixTest, MatchingPenniesHasOnlyTheUniformEquilibrium) {
  auto all = EnumerateNashBimatrix(testing::MatchingPennies(), 2);
  ASSERT_EQ(all.size(), 1u);
  EXPECT_EQ(all[0].row, (std::vector<Rational>{MakeRational(1, 2), MakeRational(1, 2)}));
}

TEST(BimatrixTest, BiggerNumberPureEquilibriumIsTop) {
  auto pure = EnumerateNashBimatrix(BiggerNumberMatrix(4), 1);
  ASSERT_EQ(pure.size(), 1u);
  EXPECT_EQ(pure[0].row, (std::vector<Rational>{0, 0, 0, 1}));
  EXPECT_EQ(pure[0].col, (std::vector<Rational>{0, 0, 0, 1}));
}

TEST(BimatrixTest, BattleOfTheSexesHasThreeEquilibria) {
  NormalFormGame g = NormalFormGame::General(MatrixOf({{2, 0}, {0, 1}}), MatrixOf({{1, 0}, {0, 2}}));
  auto all = EnumerateNashBimatrix(g, 2);
  ASSERT_EQ(all.size(), 3u);
  EXPECT_EQ(all[2].row, (std::vector<Rational>{MakeRational(2, 3), MakeRational(1, 3)}));
  EXPECT_EQ(all[2].col, (std::vector<Rational>{MakeRational(1, 3), MakeRational(2, 3)}));
  EXPECT_EQ(MinimumEquilibriumSupport(g, 2), 1);
}

TEST(BimatrixTest, IncrementingRestrictionsHaveDiagonalEquilibrium) {
  NormalFormGame g = IncrementingMatrix(8);
  for (int t = 0; t < 8; ++t) {
    std::vector<int> prefix;
    for (int i = 0; i <= t; ++i) prefix.push_back(i);
    auto pure = EnumerateNashBimatrix(g.Restricted(prefix, prefix), 1);
    bool found = false;
    for (const EquilibriumResult& e : pure) found = found || (e.row[t] == 1 && e.col[t] == 1);
    EXPECT_TRUE(found) << "t=" << t;
  }
}

TEST(BimatrixTest, CapIsEnforced) {
  EXPECT_THROW(EnumerateNashBimatrix(GuessTheStringMatrix(8), 8, 10), Error);
}

TEST(SupportTest, GuessTheStringNeedsFullSupport) {
  for (int k = 1; k <= 3; ++k) {
    NormalFormGame g = GuessTheStringMatrix(1 << k);
    EXPECT_EQ(MinimumOptimalSupport(g, Player::kOne), 1 << k);
    EXPECT_EQ(MinimumOptimalSupport(g, Player::kTwo), 1 << k);
  }
  EXPECT_EQ(MinimumOptimalSupport(BiggerNumberMatrix(8), Player::kOne), 1);
}

TEST(NashGapTest, MatchingPenniesChainProfile) {
  Posg g = MatchingPenniesChain(4);
  PosgOracle oracle(g);
  Improvements impr = NashGap(oracle, PureMixture(15), PureMixture(0));
  EXPECT_EQ(impr.impr1, MakeRational(1, 2));
  EXPECT_EQ(impr.impr2, 0);
  EXPECT_EQ(impr.gap, MakeRational(1, 2));
  EXPECT_FALSE(VerifyEquilibrium(oracle, PureMixture(15), PureMixture(0), MakeRational(1, 4))
                   .passed);
}

TEST(NashGapTest, WeakBiggerNumberZeroProfile) {
  Posg g = WeakBiggerNumber(3);
  Improvements impr = NashGap(PosgOracle(g), PureMixture(0), PureMixture(0));
  EXPECT_EQ(impr.impr1, 1);
  EXPECT_EQ(impr.impr2, 1);
  EXPECT_EQ(impr.gap, 2);
}

TEST(NashGapTest, ChainTwoPolicyEquilibriumPasses) {
  for (int k = 2; k <= 5; ++k) {
    Posg g = MatchingPenniesChain(k);
    const PolicyIndex half = (PolicyIndex{1} << (k - 1)) - 1;
    const PolicyIndex top = (PolicyIndex{1} << k) - 1;
    IndexMixture mix{{half, MakeRational(1, 2)}, {top, MakeRational(1, 2)}};
    EXPECT_TRUE(VerifyEquilibrium(PosgOracle(g), mix, mix, 0).passed) << k;
  }
}

TEST(NashGapTest, PosgOverloadMatchesOracle) {
  Posg g = BiggerNumber(3);
  MixedPolicy m1 = MixedPolicy::Pure(PolicyFromIndex(g, Player::kOne, 2));
  MixedPolicy m2(Player::kTwo, {{PolicyFromIndex(g, Player::kTwo, 1), MakeRational(1, 3)},
                                {PolicyFromIndex(g, Player::kTwo, 4), MakeRational(2, 3)}});
  Improvements a = NashGap(g, m1, m2);
  Improvements b = NashGap(PosgOracle(g), PureMixture(2),
                           {{1, MakeRational(1, 3)}, {4, MakeRational(2, 3)}});
  EXPECT_EQ(a.impr1, b.impr1);
  EXPECT_EQ(a.impr2, b.impr2);
  EXPECT_TRUE(VerifyEquilibrium(g, m1, m2, 2).passed);
}

// Property: enlarging the deviation set never lowers the improvement, and
// the full set reproduces the Nash-gap improvement.
TEST(NashGapTest, ImprovementOverIsMonotone) {
  std::mt19937_64 rng(31);
  Posg g = WeakBiggerNumber(3);
  PosgOracle oracle(g);
  for (int trial = 0; trial < 20; ++trial) {
    IndexMixture m1 = testing::RandomMixture(8, 3, rng);
    IndexMixture m2 = testing::RandomMixture(8, 3, rng);
    std::vector<PolicyIndex> candidates;
    Rational previous = ImprovementOver(oracle, Player::kOne, {0}, m1, m2);
    for (PolicyIndex i = 0; i < 8; ++i) {
      candidates.push_back(i);
      Rational now = ImprovementOver(oracle, Player::kOne, candidates, m1, m2);
      EXPECT_GE(now, previous);
      previous = now;
    }
    EXPECT_EQ(previous, NashGap(oracle, m1, m2).impr1);
  }
}

}  // namespace
}  // namespace dolab
