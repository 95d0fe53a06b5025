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

#ifndef DOLAB_EQUILIBRIUM_H_
#define DOLAB_EQUILIBRIUM_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "dolab/game_oracle.h"
#include "dolab/normal_form.h"
#include "dolab/posg.h"
#include "dolab/rational.h"

namespace dolab {

struct EquilibriumResult {
  std::vector<Rational> row;  // distribution over rows
  std::vector<Rational> col;  // distribution over columns
  Rational value1;            // expected payoffs under (row, col)
  Rational value2;
  Rational improvement1;      // best pure deviation gain within the matrix
  Rational improvement2;
};

struct UniquenessCertificate {
  bool unique = true;
  // When not unique: a second optimal strategy for `witness_player`,
  // distinct from the one solve_zero_sum returns.
  std::optional<Player> witness_player;
  std::vector<Rational> witness;
};

struct Improvements {
  Rational impr1;
  Rational impr2;
  Rational gap;  // impr1 + impr2
};

struct EquilibriumCertificate {
  bool passed = false;
  Rational impr1;
  Rational impr2;
};

// Gains of the best pure deviation for each player inside the matrix.
Improvements MatrixImprovements(const NormalFormGame& nfg, const std::vector<Rational>& row,
                                const std::vector<Rational>& col);

// Maximin row strategy and minimax column strategy, by two exact LPs.
// Throws Error(kNotZeroSum).
EquilibriumResult SolveZeroSum(const NormalFormGame& nfg);

// Among all optimal strategies of each player, the lexicographically largest
// probability vector (maximize the first coordinate, then the second, ...).
// Throws Error(kNotZeroSum).
EquilibriumResult SolveZeroSumLexicographic(const NormalFormGame& nfg);

// Probes every coordinate of each optimal-strategy polytope. Throws
// Error(kNotZeroSum).
UniquenessCertificate IsUniqueZeroSumEquilibrium(const NormalFormGame& nfg);

// One equilibrium per support pair (S1, S2) with |S_i| <= max_support that
// admits an equilibrium using exactly those supports. Pairs are visited by
// total support size, then row support, then column support, each subset in
// lexicographic order. Throws Error(kEnumerationCapExceeded) when more than
// `cap` support pairs would be examined. Stops after `limit` results.
std::vector<EquilibriumResult> EnumerateNashBimatrix(const NormalFormGame& nfg,
                                                     int max_support,
                                                     std::uint64_t cap = 1 << 22,
                                                     std::size_t limit = SIZE_MAX);

// Smallest s such that some equilibrium has both supports of size <= s.
// Returns nullopt when none exists up to `max_support`.
std::optional<int> MinimumEquilibriumSupport(const NormalFormGame& nfg, int max_support,
                                             std::uint64_t cap = 1 << 22);

// Zero-sum only: the smallest support of an optimal strategy for `p`, found
// by solving the game restricted to each subset of p's strategies in order of
// size. Throws Error(kEnumerationCapExceeded) after `cap` restricted solves.
int MinimumOptimalSupport(const NormalFormGame& nfg, Player p, std::uint64_t cap = 1 << 12);

// impr_i = max over pure policies of V_i(pi, mu_-i) minus V_i(mu).
Improvements NashGap(const GameOracle& oracle, const IndexMixture& m1,
                     const IndexMixture& m2);
Improvements NashGap(const Posg& g, const MixedPolicy& m1, const MixedPolicy& m2);

// Improvement of `p` restricted to deviations in `candidates`.
Rational ImprovementOver(const GameOracle& oracle, Player p,
                         const std::vector<PolicyIndex>& candidates, const IndexMixture& m1,
                         const IndexMixture& m2);

// Passes iff max(impr1, impr2) <= eps.
EquilibriumCertificate VerifyEquilibrium(const GameOracle& oracle, const IndexMixture& m1,
                                         const IndexMixture& m2, const Rational& eps);
EquilibriumCertificate VerifyEquilibrium(const Posg& g, const MixedPolicy& m1,
                                         const MixedPolicy& m2, const Rational& eps);

}  // namespace dolab

#endif  // DOLAB_EQUILIBRIUM_H_
