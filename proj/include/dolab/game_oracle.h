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

#ifndef DOLAB_GAME_ORACLE_H_
#define DOLAB_GAME_ORACLE_H_

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "dolab/best_response.h"
#include "dolab/normal_form.h"
#include "dolab/posg.h"
#include "dolab/rational.h"

namespace dolab {

// A mixture over canonical policy indices: ascending, distinct, positive
// weights summing to one.
using IndexMixture = std::vector<std::pair<PolicyIndex, Rational>>;

IndexMixture PureMixture(PolicyIndex index);
// Throws Error(kInvalidArgument) unless `m` is a well-formed mixture.
void CheckMixture(const IndexMixture& m);

struct OracleResponse {
  PolicyIndex witness = 0;
  Rational value;
  BigInt count;
};

// Uniform view of a two-player game through canonical policy indices, so the
// dynamics run unchanged on a POSG and on a normal-form game.
class GameOracle {
 public:
  virtual ~GameOracle() = default;

  virtual bool zero_sum() const = 0;
  virtual BigInt NumPolicies(Player p) const = 0;
  virtual ValuePair Evaluate(PolicyIndex p1, PolicyIndex p2) const = 0;
  // `candidate` is required for kScripted and `rng` for kSeededUniform.
  virtual OracleResponse BestResponse(Player p, const IndexMixture& opp,
                                      ResponseSelect select, std::mt19937_64* rng,
                                      const PolicyIndex* candidate) const = 0;
  virtual std::vector<PolicyIndex> AllBestResponses(Player p, const IndexMixture& opp,
                                                    std::uint64_t limit) const = 0;

  ValuePair EvaluateMixed(const IndexMixture& m1, const IndexMixture& m2) const;
  // V_p(index, opp).
  Rational ValueAgainst(Player p, PolicyIndex index, const IndexMixture& opp) const;
  void CheckIndex(Player p, PolicyIndex index) const;
};

class PosgOracle : public GameOracle {
 public:
  explicit PosgOracle(const Posg& g) : g_(g) {}

  bool zero_sum() const override { return g_.zero_sum(); }
  BigInt NumPolicies(Player p) const override { return g_.NumPurePolicies(p); }
  ValuePair Evaluate(PolicyIndex p1, PolicyIndex p2) const override;
  OracleResponse BestResponse(Player p, const IndexMixture& opp, ResponseSelect select,
                              std::mt19937_64* rng,
                              const PolicyIndex* candidate) const override;
  std::vector<PolicyIndex> AllBestResponses(Player p, const IndexMixture& opp,
                                            std::uint64_t limit) const override;

  MixedPolicy ToMixed(Player p, const IndexMixture& m) const;
  const Posg& game() const { return g_; }

 private:
  const Posg& g_;
};

// Strategy r of player 1 is index r; likewise for columns.
class MatrixOracle : public GameOracle {
 public:
  explicit MatrixOracle(NormalFormGame nfg);

  bool zero_sum() const override { return nfg_.zero_sum; }
  BigInt NumPolicies(Player p) const override;
  ValuePair Evaluate(PolicyIndex p1, PolicyIndex p2) const override;
  OracleResponse BestResponse(Player p, const IndexMixture& opp, ResponseSelect select,
                              std::mt19937_64* rng,
                              const PolicyIndex* candidate) const override;
  std::vector<PolicyIndex> AllBestResponses(Player p, const IndexMixture& opp,
                                            std::uint64_t limit) const override;

  const NormalFormGame& game() const { return nfg_; }

 private:
  std::vector<Rational> Payoffs(Player p, const IndexMixture& opp) const;

  NormalFormGame nfg_;
};

}  // namespace dolab

#endif  // DOLAB_GAME_ORACLE_H_
