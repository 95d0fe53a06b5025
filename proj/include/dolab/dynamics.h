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

#ifndef DOLAB_DYNAMICS_H_
#define DOLAB_DYNAMICS_H_

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dolab/game_oracle.h"
#include "dolab/rational.h"

namespace dolab {

enum class MetaNashMode { kUniqueOrFail, kLexicographic, kScripted };
enum class ResponseMode { kUniqueOrFail, kLexicographic, kSeededRandom, kScripted };

std::string_view MetaNashModeName(MetaNashMode mode);
std::string_view ResponseModeName(ResponseMode mode);
std::optional<MetaNashMode> ParseMetaNashMode(std::string_view name);
std::optional<ResponseMode> ParseResponseMode(std::string_view name);

struct ScriptedProfile {
  IndexMixture m1;
  IndexMixture m2;
};

// Adversarial choices, consulted per iteration t (1-based). A callback
// returning nullopt, or an iteration past `length`, defers to the fallback
// modes of the tiebreak policy.
struct Schedule {
  std::string name;
  int length = 0;
  std::function<std::optional<ScriptedProfile>(int t)> meta_nash;
  std::function<std::optional<PolicyIndex>(int t, Player p, const IndexMixture& opp)> response;
};

struct TiebreakPolicy {
  MetaNashMode meta_nash = MetaNashMode::kLexicographic;
  ResponseMode best_response = ResponseMode::kLexicographic;
  MetaNashMode meta_nash_fallback = MetaNashMode::kLexicographic;
  ResponseMode best_response_fallback = ResponseMode::kLexicographic;
  std::shared_ptr<const Schedule> schedule;
  // nullopt draws both initial policies uniformly from the seed.
  std::optional<std::pair<PolicyIndex, PolicyIndex>> init;
  std::uint64_t seed = 0;
};

enum class RunOutcome {
  kConverged,           // gap <= eps
  kStalled,             // nothing new was added
  kMaxIters,
  kIllegalMetaNash,     // scripted profile is not a meta-game equilibrium
  kIllegalBestResponse, // scripted response is not a best response
  kScheduleBlocked,     // scripted profile uses a policy outside the sets
  kUniquenessViolation, // unique-or-fail found several choices
};

std::string_view RunOutcomeName(RunOutcome outcome);
std::optional<RunOutcome> ParseRunOutcome(std::string_view name);
bool IsLegalityFailure(RunOutcome outcome);

struct IterationRecord {
  int t = 0;
  std::vector<PolicyIndex> set1;  // meta-game strategies, ascending
  std::vector<PolicyIndex> set2;
  IndexMixture mu1;
  IndexMixture mu2;
  Rational meta_value1;
  Rational meta_value2;
  std::string meta_cert;  // how the meta-Nash was chosen and checked
  PolicyIndex br1 = 0;
  PolicyIndex br2 = 0;
  Rational br_value1;
  Rational br_value2;
  BigInt br_count1;
  BigInt br_count2;
  std::string br_cert1;
  std::string br_cert2;
  Rational impr1;
  Rational impr2;
  Rational gap;
  bool added1 = false;
  bool added2 = false;
  bool gated1 = false;
  bool gated2 = false;
  PolicyIndex max_support = 0;  // M(t): largest index in either meta-Nash support

  bool operator==(const IterationRecord&) const = default;
};

struct RunTrace {
  std::string algorithm;  // "do" or "alpha-do"
  Rational eps;
  std::optional<Rational> alpha;
  PolicyIndex init1 = 0;
  PolicyIndex init2 = 0;
  std::vector<IterationRecord> iterations;
  RunOutcome outcome = RunOutcome::kMaxIters;
  // Number of iterations that added policies before termination.
  int iteration_count = 0;
  std::string message;  // detail for failures
  std::optional<std::pair<int, Player>> first_gated;

  PolicyIndex M0() const { return std::max(init1, init2); }
};

// Double oracle: each iteration solves the meta-game over the current sets,
// computes both best responses against the same meta-Nash, stops when the
// gap is at most eps, and otherwise adds both responses. Failures are
// reported as the trace outcome.
RunTrace RunDoubleOracle(const GameOracle& oracle, const Rational& eps,
                         const TiebreakPolicy& tiebreak, int max_iters);

// As RunDoubleOracle, but a response is added only when its improvement is
// at least alpha. Halts as kStalled when neither response is added.
RunTrace RunAlphaDoubleOracle(const GameOracle& oracle, const Rational& eps,
                              const Rational& alpha, const TiebreakPolicy& tiebreak,
                              int max_iters);

struct FpRound {
  int t = 0;
  IndexMixture mu1;  // uniform averages of the responses so far
  IndexMixture mu2;
  PolicyIndex br1 = 0;
  PolicyIndex br2 = 0;
  Rational impr1;
  Rational impr2;
  Rational exploitability;
};

struct FpTrace {
  std::vector<FpRound> rounds;
  std::optional<int> first_zero;  // first round with exploitability 0
};

// Simultaneous fictitious play from the tiebreak's initial profile.
FpTrace RunFictitiousPlay(const GameOracle& oracle, int rounds,
                          const TiebreakPolicy& tiebreak);

struct BrdTrace {
  std::vector<std::pair<PolicyIndex, PolicyIndex>> profiles;  // profiles[0] is the start
  bool converged = false;        // reached a fixed point
  std::optional<int> cycle_start;  // first round of a repeating cycle
  int cycle_length = 0;
};

// Simultaneous pure best-response dynamics.
BrdTrace RunBestResponseDynamics(const GameOracle& oracle, int rounds,
                                 const TiebreakPolicy& tiebreak);

// Initial profile: the given pair, or uniform draws from the seed.
std::pair<PolicyIndex, PolicyIndex> InitialProfile(const GameOracle& oracle,
                                                   const TiebreakPolicy& tiebreak);

}  // namespace dolab

#endif  // DOLAB_DYNAMICS_H_
