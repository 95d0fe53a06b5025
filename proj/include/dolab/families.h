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

#ifndef DOLAB_FAMILIES_H_
#define DOLAB_FAMILIES_H_

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "dolab/dynamics.h"
#include "dolab/normal_form.h"
#include "dolab/posg.h"

namespace dolab {

enum class Family {
  kGuessTheString,
  kBiggerNumber,
  kWeakBiggerNumber,
  kIncrementing,
  kMatchingPenniesChain,
};

inline constexpr Family kAllFamilies[] = {
    Family::kGuessTheString, Family::kBiggerNumber, Family::kWeakBiggerNumber,
    Family::kIncrementing, Family::kMatchingPenniesChain};

std::string_view FamilyName(Family family);
// Accepts the display name ("BiggerNumber") or snake case ("bigger_number").
std::optional<Family> ParseFamily(std::string_view name);
int MinimumK(Family family);

// All bit strings are read most significant bit first: bit 1 is decided at
// the first step (or, in the chain of pennies, at the first start state).

// Chain of k simultaneous bit choices. Matching bits advance; the first
// mismatch ends the game at +1 for player 1; matching all k bits ends at -1.
Posg GuessTheString(int k);
NormalFormGame GuessTheStringMatrix(int n);

// Each player writes a k-bit number without seeing anything. The bigger
// number scores 1, or 2 when the numbers differ by exactly one.
Posg BiggerNumber(int k);
NormalFormGame BiggerNumberMatrix(int n);

// As above but the bigger number always scores 1; fully observable.
Posg WeakBiggerNumber(int k);
NormalFormGame WeakBiggerNumberMatrix(int n);

// General-sum tree-form game in which a k-bit number earns 1/(2k) against
// its predecessor and the predecessor loses 1. The root move announces the
// trailing run of the number, a chance move then asks for one uniformly
// drawn earlier bit.
Posg Incrementing(int k);
// Expected payoffs between bit-string strategies; n must be 2^k, k >= 2.
NormalFormGame IncrementingMatrix(int n);

// k one-shot states drawn uniformly. The first is matching pennies won by
// player 1 on a match; at the others player 2 wins only with (0, 1).
Posg MatchingPenniesChain(int k);
NormalFormGame MatchingPenniesChainMatrix(int k);

// Throws Error(kInvalidFamily) when k is out of range.
Posg Generate(Family family, int k);
// Direct payoff oracle over the family's integer encoding.
NormalFormGame FamilyMatrix(Family family, int k);

// Number of integers the family encoding covers: 2^k.
PolicyIndex EncodingSize(int k);

// Integer <-> policy of the generated game. For the incrementing game only
// bit-string strategies are encodable. Throws Error(kIndexOutOfRange).
PurePolicy EncodePolicy(Family family, int k, Player player, PolicyIndex x);
PolicyIndex DecodePolicy(Family family, int k, const PurePolicy& policy);
// Canonical index of EncodePolicy(family, k, player, x).
PolicyIndex EncodeIndex(Family family, int k, Player player, PolicyIndex x);
std::optional<PolicyIndex> DecodeIndex(Family family, int k, Player player,
                                       PolicyIndex index);

struct StructureCounts {
  int states = 0;
  int terminals = 0;
  int domain1 = 0;
  int domain2 = 0;
};
// Closed forms for the generated games.
StructureCounts ExpectedStructure(Family family, int k);

enum class Theorem { kT1, kT2, kT3, kT4, kT5 };
std::string_view TheoremName(Theorem theorem);
std::optional<Theorem> ParseTheorem(std::string_view name);
Family TheoremFamily(Theorem theorem);

// Adversarial schedules over canonical indices of the generated game.
//  T3: both players respond with encode(min(max supp(opponent) + 1, 2^k - 1)).
//  T4: meta-Nash (encode(t-1), encode(t-1)), responses encode(t).
//  T5: meta-Nash (encode(2^k-1), encode(t-1)), responses encode(t-1) for
//      player 1 and encode(t) for player 2 while t < 2^(k-1).
std::shared_ptr<const Schedule> ScheduleForTheorem(Theorem theorem, int k);
std::pair<PolicyIndex, PolicyIndex> InitForTheorem(Theorem theorem, int k);
// Tiebreak modes, schedule and start used to certify the theorem.
TiebreakPolicy TiebreakForTheorem(Theorem theorem, int k);

}  // namespace dolab

#endif  // DOLAB_FAMILIES_H_
