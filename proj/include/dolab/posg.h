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

#ifndef DOLAB_POSG_H_
#define DOLAB_POSG_H_

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dolab/normal_form.h"
#include "dolab/rational.h"

namespace dolab {

using StateId = int;
using ObsId = int;
using Action = int;
using PolicyIndex = std::uint64_t;

enum class Player : int { kOne = 0, kTwo = 1 };

inline int Index(Player p) { return static_cast<int>(p); }
inline Player Opponent(Player p) {
  return p == Player::kOne ? Player::kTwo : Player::kOne;
}
inline const char* PlayerName(Player p) { return p == Player::kOne ? "P1" : "P2"; }

struct Outcome {
  StateId next = 0;
  Rational prob;
};

struct TransitionSpec {
  StateId state = 0;
  Action a1 = 0;
  Action a2 = 0;
  std::vector<Outcome> outcomes;
};

// Raw, unvalidated game description. Posg::Build checks it.
struct PosgSpec {
  std::string name;
  int num_states = 0;
  std::array<int, 2> num_actions{1, 1};
  bool zero_sum = false;
  std::vector<std::pair<StateId, Rational>> start;
  std::map<StateId, std::pair<Rational, Rational>> rewards;  // terminals
  std::map<StateId, std::pair<ObsId, ObsId>> observations;   // nonterminals
  std::vector<TransitionSpec> transitions;
  std::map<std::string, std::string> metadata;
};

// Reachable observation sequences of one player, stored as a trie. Node ids
// follow lexicographic order of the sequences (a pre-order walk with
// children sorted by observation), so every subtree occupies a contiguous id
// range and node 0 is the lexicographically first sequence.
class SequenceTable {
 public:
  struct Node {
    int parent = -1;  // -1 for length-one sequences
    ObsId obs = 0;
    int length = 1;
    int subtree_size = 1;
    std::vector<int> children;  // ascending obs
  };

  int size() const { return static_cast<int>(nodes_.size()); }
  const Node& node(int id) const { return nodes_[id]; }
  const std::vector<int>& roots() const { return roots_; }
  // Child of `id` by observation; id == -1 addresses the empty sequence.
  // Returns -1 when the extension is not a reachable sequence.
  int Child(int id, ObsId obs) const;
  std::vector<ObsId> Sequence(int id) const;

  static SequenceTable FromSequences(const std::vector<std::vector<ObsId>>& sorted);

 private:
  std::vector<Node> nodes_;
  std::vector<int> roots_;
  std::map<std::pair<int, ObsId>, int> child_index_;
};

// Two-player POSG with acyclic transitions. Immutable once built.
class Posg {
 public:
  // Validates the description. Throws Error with kNonStochasticTransition,
  // kCyclicTransitionGraph, kRewardOnNonterminal, kDanglingState,
  // kInvalidStartDistribution, kZeroSumViolation or kMalformed.
  static Posg Build(PosgSpec spec);

  const PosgSpec& spec() const { return spec_; }
  const std::string& name() const { return spec_.name; }
  int num_states() const { return spec_.num_states; }
  int num_actions(Player p) const { return spec_.num_actions[Index(p)]; }
  bool zero_sum() const { return spec_.zero_sum; }
  int depth() const { return depth_; }

  bool IsTerminal(StateId s) const { return terminal_[s]; }
  const Rational& Reward(StateId s, Player p) const {
    return Index(p) == 0 ? reward1_[s] : reward2_[s];
  }
  ObsId Observation(StateId s, Player p) const { return obs_[s][Index(p)]; }
  std::span<const Outcome> Transition(StateId s, Action a1, Action a2) const {
    return rows_[s][a1 * spec_.num_actions[1] + a2];
  }
  const std::vector<std::pair<StateId, Rational>>& start() const { return spec_.start; }

  const SequenceTable& Sequences(Player p) const { return sequences_[Index(p)]; }
  int PolicyDomainSize(Player p) const { return Sequences(p).size(); }
  BigInt NumPurePolicies(Player p) const;

  int NumTerminals() const;
  // Both players observe the state itself: o_1 = o_2 and injective.
  bool IsFullyObservable() const;
  // Forest in which the start states are the roots and every other state
  // has exactly one incoming edge (counting parallel action-pair edges).
  bool IsTreeForm() const;

 private:
  PosgSpec spec_;
  int depth_ = 0;
  std::vector<bool> terminal_;
  std::vector<Rational> reward1_;
  std::vector<Rational> reward2_;
  std::vector<std::array<ObsId, 2>> obs_;
  std::vector<std::vector<std::vector<Outcome>>> rows_;
  std::array<SequenceTable, 2> sequences_;
};

// A deterministic map from the player's reachable observation sequences
// (indexed by SequenceTable id) to actions.
struct PurePolicy {
  Player player = Player::kOne;
  std::vector<Action> actions;

  bool operator==(const PurePolicy&) const = default;
  auto operator<=>(const PurePolicy&) const = default;
};

// Throws Error(kDomainMismatch) unless `policy` fits g's domain for its player.
void CheckDomain(const Posg& g, const PurePolicy& policy);

// Canonical integer: actions read as mixed-radix digits in sequence order,
// first sequence most significant. Throws kEnumerationCapExceeded if the
// policy space does not fit in 63 bits.
PolicyIndex CanonicalIndex(const Posg& g, const PurePolicy& policy);
PurePolicy PolicyFromIndex(const Posg& g, Player player, PolicyIndex index);

// Finite-support distribution over pure policies with exact weights.
class MixedPolicy {
 public:
  using Entry = std::pair<PurePolicy, Rational>;

  // Throws Error(kInvalidArgument) unless weights are positive, sum to one,
  // policies are distinct and belong to `player`.
  MixedPolicy(Player player, std::vector<Entry> support);
  static MixedPolicy Pure(PurePolicy policy);

  Player player() const { return player_; }
  const std::vector<Entry>& support() const { return support_; }

 private:
  Player player_;
  std::vector<Entry> support_;
};

struct ValuePair {
  Rational v1;
  Rational v2;
  const Rational& operator[](Player p) const { return Index(p) == 0 ? v1 : v2; }
  bool operator==(const ValuePair&) const = default;
};

ValuePair EvaluateProfile(const Posg& g, const PurePolicy& p1, const PurePolicy& p2);
ValuePair EvaluateMixed(const Posg& g, const MixedPolicy& m1, const MixedPolicy& m2);

// Per step of forward propagation: mass still on nonterminal states and mass
// absorbed by terminals so far. Their sum is exactly one at every step.
struct MassStep {
  Rational live;
  Rational absorbed;
};
std::vector<MassStep> ForwardMass(const Posg& g, const PurePolicy& p1,
                                  const PurePolicy& p2);

inline constexpr std::uint64_t kDefaultEnumerationCap = std::uint64_t{1} << 20;

// One row per pure policy of P1 and one column per pure policy of P2, both
// in canonical index order. Throws kEnumerationCapExceeded when
// |Pi_1| * |Pi_2| exceeds `cap`.
NormalFormGame InducedNormalForm(const Posg& g,
                                 std::uint64_t cap = kDefaultEnumerationCap);

}  // namespace dolab

#endif  // DOLAB_POSG_H_
