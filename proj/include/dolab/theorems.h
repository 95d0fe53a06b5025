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

#ifndef DOLAB_THEOREMS_H_
#define DOLAB_THEOREMS_H_

#include <string>
#include <vector>

#include "dolab/dynamics.h"
#include "dolab/families.h"
#include "dolab/rational.h"
#include "dolab/trace_io.h"

namespace dolab {

// Tolerance each theorem run uses: 0 for T1 and T2, 1 for T3, 1/(2k) for T4
// and 1/k for T5.
Rational EpsForTheorem(Theorem theorem, int k);

// Largest k verify_theorem accepts for each theorem.
int MaxTheoremK(Theorem theorem);

enum class VerdictStatus { kPass, kPredicateFailure, kLegalityFailure };

struct TheoremVerdict {
  Theorem theorem = Theorem::kT1;
  int k = 0;
  VerdictStatus status = VerdictStatus::kPass;
  std::string failure;              // first violated predicate
  std::vector<std::string> checks;  // predicates that held, in order
  RunTrace trace;

  bool passed() const { return status == VerdictStatus::kPass; }
  Json ToJson() const;
};

// Runs the theorem's configuration on the family game of size k and checks
// its predicates:
//  T1  lexicographic run converges; gap 0 only once both sets are complete;
//      the gap after 2t iterations is at most 2/t; for k <= 3 every optimal
//      strategy has full support.
//  T2  no uniqueness violation; one best response every iteration; the
//      largest policy grows by at most one per iteration; 2^k - 1 iterations.
//  T3  every scripted response certified; exactly 2^k - 1 iterations.
//  T4  for k <= 3 the weakly reduced induced game has 2^k strategies per
//      player and equals the incrementing matrix; (t, t) is an equilibrium of
//      the restriction to {0..t} and t + 1 a best response to t; the
//      scripted run takes 2^k - 1 iterations.
//  T5  for t <= 2^(k-1): the policy sets are {0..t-2, 2^k-1} and {0..t-1},
//      the scripted meta-Nash and responses are certified and the gap is
//      2/k; for k <= 6 the game value is 1 - 1/k and the two-policy mixture
//      {2^(k-1)-1, 2^k-1} is an exact equilibrium for both players.
// Throws Error(kEnumerationCapExceeded) when k > MaxTheoremK.
TheoremVerdict VerifyTheorem(Theorem theorem, int k);

}  // namespace dolab

#endif  // DOLAB_THEOREMS_H_
