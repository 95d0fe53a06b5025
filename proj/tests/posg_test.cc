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

#include "dolab/errors.h"
#include "dolab/families.h"
#include "dolab/posg.h"
#include "test_util.h"

namespace dolab {
namespace {

using testing::MatchingPenniesSpec;

ErrorCode BuildError(PosgSpec spec) {
  try {
    Posg::Build(std::move(spec));
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "Build accepted an invalid spec";
  return ErrorCode::kMalformed;
}

TEST(PosgBuildTest, AcceptsMatchingPennies) {
  Posg g = Posg::Build(MatchingPenniesSpec());
  EXPECT_EQ(g.num_states(), 5);
  EXPECT_EQ(g.NumTerminals(), 4);
  EXPECT_EQ(g.depth(), 1);
  EXPECT_EQ(g.NumPurePolicies(Player::kOne), 2);
  EXPECT_TRUE(g.IsTreeForm());
}

TEST(PosgBuildTest, RejectsNonStochasticRow) {
  PosgSpec spec = MatchingPenniesSpec();
  spec.transitions[0].outcomes = {{1, MakeRational(1, 2)}};
  EXPECT_EQ(BuildError(spec), ErrorCode::kNonStochasticTransition);
}

TEST(PosgBuildTest, RejectsCycles) {
  PosgSpec spec;
  spec.num_states = 3;
  spec.num_actions = {1, 1};
  spec.start = {{0, 1}};
  spec.observations[0] = {0, 0};
  spec.observations[1] = {1, 1};
  spec.rewards[2] = {0, 0};
  spec.transitions = {{0, 0, 0, {{1, 1}}},
                      {1, 0, 0, {{0, MakeRational(1, 2)}, {2, MakeRational(1, 2)}}}};
  EXPECT_EQ(BuildError(spec), ErrorCode::kCyclicTransitionGraph);
}

TEST(PosgBuildTest, RejectsRewardOnNonterminal) {
  PosgSpec spec = MatchingPenniesSpec();
  spec.rewards[0] = {0, 0};
  EXPECT_EQ(BuildError(spec), ErrorCode::kRewardOnNonterminal);
}

TEST(PosgBuildTest, RejectsDanglingStates) {
  PosgSpec spec = MatchingPenniesSpec();
  spec.transitions[0].outcomes = {{9, 1}};
  EXPECT_EQ(BuildError(spec), ErrorCode::kDanglingState);
  spec = MatchingPenniesSpec();
  spec.num_states = 6;  // state 5 is neither terminal nor has transitions
  EXPECT_EQ(BuildError(spec), ErrorCode::kDanglingState);
}

TEST(PosgBuildTest, RejectsBadStartDistribution) {
  PosgSpec spec = MatchingPenniesSpec();
  spec.start = {{0, MakeRational(1, 2)}};
  EXPECT_EQ(BuildError(spec), ErrorCode::kInvalidStartDistribution);
  spec.start = {{7, 1}};
  EXPECT_EQ(BuildError(spec), ErrorCode::kInvalidStartDistribution);
}

TEST(PosgBuildTest, RejectsZeroSumViolation) {
  PosgSpec spec = MatchingPenniesSpec();
  spec.rewards[1] = {1, 1};
  EXPECT_EQ(BuildError(spec), ErrorCode::kZeroSumViolation);
}

TEST(PosgPolicyTest, CanonicalIndexRoundTrips) {
  for (Family f : kAllFamilies) {
    Posg g = Generate(f, 3);
    for (Player p : {Player::kOne, Player::kTwo}) {
      const PolicyIndex n = g.NumPurePolicies(p).get_ui();
      for (PolicyIndex i = 0; i < n; i += std::max<PolicyIndex>(1, n / 50)) {
        PurePolicy policy = PolicyFromIndex(g, p, i);
        EXPECT_EQ(CanonicalIndex(g, policy), i);
      }
    }
  }
}

TEST(PosgPolicyTest, DomainMismatchIsReported) {
  Posg g = Generate(Family::kBiggerNumber, 2);
  PurePolicy wrong{Player::kOne, {0}};
  EXPECT_THROW(CheckDomain(g, wrong), Error);
  PurePolicy bad_action{Player::kOne, std::vector<Action>(g.PolicyDomainSize(Player::kOne), 5)};
  EXPECT_THROW(CheckDomain(g, bad_action), Error);
}

TEST(PosgPolicyTest, MixedPolicyValidatesWeights) {
  Posg g = Posg::Build(MatchingPenniesSpec());
  PurePolicy a = PolicyFromIndex(g, Player::kOne, 0);
  PurePolicy b = PolicyFromIndex(g, Player::kOne, 1);
  EXPECT_THROW(MixedPolicy(Player::kOne, {{a, MakeRational(1, 2)}}), Error);
  EXPECT_THROW(MixedPolicy(Player::kOne, {{a, MakeRational(1, 2)}, {a, MakeRational(1, 2)}}),
               Error);
  EXPECT_NO_THROW(MixedPolicy(Player::kOne, {{a, MakeRational(1, 3)}, {b, MakeRational(2, 3)}}));
}

TEST(PosgEvaluateTest, MatchingPenniesPayoffs) {
  Posg g = Posg::Build(MatchingPenniesSpec());
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      ValuePair v = EvaluateProfile(g, PolicyFromIndex(g, Player::kOne, a),
                                    PolicyFromIndex(g, Player::kTwo, b));
      EXPECT_EQ(v.v1, a == b ? 1 : -1);
      EXPECT_EQ(v.v2, -v.v1);
    }
  }
}

// Property: live plus absorbed mass is exactly one after every step and all
// mass is absorbed by the end.
TEST(PosgEvaluateTest, ForwardMassIsConserved) {
  std::mt19937_64 rng(3);
  for (Family f : kAllFamilies) {
    Posg g = Generate(f, 3);
    for (int trial = 0; trial < 5; ++trial) {
      PurePolicy p1 = PolicyFromIndex(g, Player::kOne,
                                      rng() % g.NumPurePolicies(Player::kOne).get_ui());
      PurePolicy p2 = PolicyFromIndex(g, Player::kTwo,
                                      rng() % g.NumPurePolicies(Player::kTwo).get_ui());
      std::vector<MassStep> steps = ForwardMass(g, p1, p2);
      ASSERT_FALSE(steps.empty());
      for (const MassStep& s : steps) EXPECT_EQ(s.live + s.absorbed, 1);
      EXPECT_EQ(steps.back().live, 0);
    }
  }
}

// Property: mixed evaluation is the weighted sum of pure evaluations.
TEST(PosgEvaluateTest, MixedEvaluationIsBilinear) {
  std::mt19937_64 rng(11);
  for (Family f : kAllFamilies) {
    Posg g = Generate(f, 2);
    const PolicyIndex n1 = g.NumPurePolicies(Player::kOne).get_ui();
    const PolicyIndex n2 = g.NumPurePolicies(Player::kTwo).get_ui();
    IndexMixture m1 = testing::RandomMixture(n1, 3, rng);
    IndexMixture m2 = testing::RandomMixture(n2, 3, rng);
    std::vector<MixedPolicy::Entry> e1;
    std::vector<MixedPolicy::Entry> e2;
    for (const auto& [i, w] : m1) e1.push_back({PolicyFromIndex(g, Player::kOne, i), w});
    for (const auto& [i, w] : m2) e2.push_back({PolicyFromIndex(g, Player::kTwo, i), w});
    ValuePair mixed = EvaluateMixed(g, MixedPolicy(Player::kOne, e1),
                                    MixedPolicy(Player::kTwo, e2));
    ValuePair expected{0, 0};
    for (const auto& [a, wa] : e1) {
      for (const auto& [b, wb] : e2) {
        ValuePair v = EvaluateProfile(g, a, b);
        expected.v1 += wa * wb * v.v1;
        expected.v2 += wa * wb * v.v2;
      }
    }
    EXPECT_EQ(mixed, expected) << FamilyName(f);
  }
}

TEST(PosgEvaluateTest, InducedNormalFormMatchesProfiles) {
  Posg g = Generate(Family::kWeakBiggerNumber, 2);
  NormalFormGame nfg = InducedNormalForm(g);
  ASSERT_EQ(nfg.rows(), 4);
  ASSERT_EQ(nfg.cols(), 4);
  EXPECT_TRUE(nfg.zero_sum);
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      ValuePair v = EvaluateProfile(g, PolicyFromIndex(g, Player::kOne, r),
                                    PolicyFromIndex(g, Player::kTwo, c));
      EXPECT_EQ(nfg.payoff1(r, c), v.v1);
      EXPECT_EQ(nfg.payoff2(r, c), v.v2);
    }
  }
  EXPECT_THROW(InducedNormalForm(Generate(Family::kGuessTheString, 4), 100), Error);
}

TEST(PosgStructureTest, FlagsOfHandBuiltGame) {
  Posg g = Posg::Build(MatchingPenniesSpec());
  EXPECT_TRUE(g.IsFullyObservable());
  EXPECT_TRUE(g.IsTreeForm());
}

}  // namespace
}  // namespace dolab
