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
#include "dolab/lp.h"
#include "dolab/rational.h"

namespace dolab {
namespace {

TEST(RationalTest, FormatsAsNumeratorOverDenominator) {
  EXPECT_EQ(FormatRational(MakeRational(2, 4)), "1/2");
  EXPECT_EQ(FormatRational(MakeRational(-3)), "-3/1");
  EXPECT_EQ(FormatRational(Rational(0)), "0/1");
}

TEST(RationalTest, ParseRoundTrips) {
  for (const char* text : {"1/2", "-7/3", "0/1", "123456789012345678901234567891/2"}) {
    EXPECT_EQ(FormatRational(ParseRational(text)), text);
  }
  EXPECT_EQ(ParseRational("4/8"), MakeRational(1, 2));
  EXPECT_EQ(ParseRational("3"), MakeRational(3));
}

TEST(RationalTest, RejectsGarbage) {
  for (const char* text : {"", "1/0", "a/b", "1/2/3", "1.5"}) {
    EXPECT_THROW(ParseRational(text), std::invalid_argument) << text;
  }
}

TEST(RationalTest, BigIntRoundTrips) {
  BigInt big("340282366920938463463374607431768211456");
  EXPECT_EQ(ParseBigInt(FormatBigInt(big)), big);
}

TEST(LpTest, SolvesSmallMaximization) {
  // max 3x + 2y  s.t. x + y <= 4, x + 3y <= 6, x <= 3.
  LinearProgram lp;
  lp.num_vars = 2;
  lp.objective = {3, 2};
  lp.AddConstraint(Relation::kLessEqual, 4).coeffs = {1, 1};
  lp.AddConstraint(Relation::kLessEqual, 6).coeffs = {1, 3};
  lp.AddConstraint(Relation::kLessEqual, 3).coeffs = {1, 0};
  LpResult r = SolveLp(lp);
  ASSERT_EQ(r.status, LpStatus::kOptimal);
  EXPECT_EQ(r.objective, 11);
  EXPECT_EQ(r.x[0], 3);
  EXPECT_EQ(r.x[1], 1);
}

TEST(LpTest, DetectsInfeasibleAndUnbounded) {
  LinearProgram infeasible;
  infeasible.num_vars = 1;
  infeasible.objective = {1};
  infeasible.AddConstraint(Relation::kGreaterEqual, 2).coeffs = {1};
  infeasible.AddConstraint(Relation::kLessEqual, 1).coeffs = {1};
  EXPECT_EQ(SolveLp(infeasible).status, LpStatus::kInfeasible);

  LinearProgram unbounded;
  unbounded.num_vars = 2;
  unbounded.objective = {1, 1};
  unbounded.AddConstraint(Relation::kGreaterEqual, 1).coeffs = {1, -1};
  EXPECT_EQ(SolveLp(unbounded).status, LpStatus::kUnbounded);
}

TEST(LpTest, FreeVariablesAndEqualities) {
  // max -|z| style: z free, z = -5/2, objective z.
  LinearProgram lp;
  lp.num_vars = 1;
  lp.objective = {1};
  lp.free_vars = {true};
  lp.AddConstraint(Relation::kEqual, MakeRational(-5, 2)).coeffs = {1};
  LpResult r = SolveLp(lp);
  ASSERT_EQ(r.status, LpStatus::kOptimal);
  EXPECT_EQ(r.x[0], MakeRational(-5, 2));
}

// Property: on random bounded LPs the simplex optimum is at least as good as
// every vertex of a coarse grid and satisfies all constraints exactly.
TEST(LpTest, OptimumDominatesFeasibleGridPoints) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> coef(-3, 5);
  std::uniform_int_distribution<int> rhs(1, 9);
  for (int trial = 0; trial < 40; ++trial) {
    LinearProgram lp;
    lp.num_vars = 2;
    lp.objective = {coef(rng), coef(rng)};
    for (int i = 0; i < 3; ++i) {
      lp.AddConstraint(Relation::kLessEqual, rhs(rng)).coeffs = {std::abs(coef(rng)) + 1,
                                                                 std::abs(coef(rng)) + 1};
    }
    LpResult r = SolveLp(lp);
    ASSERT_EQ(r.status, LpStatus::kOptimal);
    for (const auto& c : lp.constraints) {
      EXPECT_LE(c.coeffs[0] * r.x[0] + c.coeffs[1] * r.x[1], c.rhs);
    }
    for (int a = 0; a <= 20; ++a) {
      for (int b = 0; b <= 20; ++b) {
        Rational x = MakeRational(a, 4);
        Rational y = MakeRational(b, 4);
        bool feasible = true;
        for (const auto& c : lp.constraints) {
          feasible = feasible && c.coeffs[0] * x + c.coeffs[1] * y <= c.rhs;
        }
        if (feasible) {
          EXPECT_GE(r.objective, lp.objective[0] * x + lp.objective[1] * y);
        }
      }
    }
  }
}

}  // namespace
}  // namespace dolab
