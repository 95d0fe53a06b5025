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

#ifndef DOLAB_BEST_RESPONSE_H_
#define DOLAB_BEST_RESPONSE_H_

#include <cstdint>
#include <random>
#include <vector>

#include "dolab/posg.h"
#include "dolab/rational.h"

namespace dolab {

enum class ResponseSelect {
  kLexicographic,  // smallest canonical index among optimal policies
  kSeededUniform,  // exactly uniform over optimal policies, driven by `rng`
  kScripted,       // the given candidate, which must be optimal
};

struct ResponseRequest {
  ResponseSelect select = ResponseSelect::kLexicographic;
  std::mt19937_64* rng = nullptr;          // kSeededUniform
  const PurePolicy* candidate = nullptr;   // kScripted
};

struct BestResponseResult {
  Rational value;
  PurePolicy witness;
  BigInt count;  // number of optimal pure policies over the whole domain
};

// Games whose player domain has more sequences than this are refused.
inline constexpr int kMaxResponseDomain = 1 << 14;

// Exact best response of `player` against `opp` by dynamic programming over
// the player's observation-sequence tree. Each node carries the joint mass
// over (state, opponent sequence, opponent support index); every optimal
// action is kept, so the count is exact and sampling is uniform.
//
// Throws kDomainMismatch, kEnumerationCapExceeded, or
// kScriptedCandidateSuboptimal.
BestResponseResult BestResponse(const Posg& g, Player player, const MixedPolicy& opp,
                                const ResponseRequest& request = {});

bool IsBestResponse(const Posg& g, Player player, const PurePolicy& candidate,
                    const MixedPolicy& opp);

BigInt CountBestResponses(const Posg& g, Player player, const MixedPolicy& opp);

// Every optimal pure policy, in canonical order. Throws
// kEnumerationCapExceeded if there are more than `limit`.
std::vector<PurePolicy> EnumerateBestResponses(const Posg& g, Player player,
                                               const MixedPolicy& opp,
                                               std::uint64_t limit = 1 << 16);

// V_player(candidate, opp), exact.
Rational ValueAgainst(const Posg& g, Player player, const PurePolicy& candidate,
                      const MixedPolicy& opp);

// Uniform integer in [0, bound) from 64-bit draws with rejection.
BigInt UniformBelow(const BigInt& bound, std::mt19937_64& rng);

}  // namespace dolab

#endif  // DOLAB_BEST_RESPONSE_H_
