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

#include "dolab/posg.h"

#include <algorithm>
#include <functional>
#include <limits>
#include <set>
#include <tuple>

#include "dolab/errors.h"

namespace dolab {

int SequenceTable::Child(int id, ObsId obs) const {
  auto it = child_index_.find({id, obs});
  return it == child_index_.end() ? -1 : it->second;
}

std::vector<ObsId> SequenceTable::Sequence(int id) const {
  std::vector<ObsId> seq;
  for (int n = id; n >= 0; n = nodes_[n].parent) seq.push_back(nodes_[n].obs);
  std::reverse(seq.begin(), seq.end());
  return seq;
}

SequenceTable SequenceTable::FromSequences(
    const std::vector<std::vector<ObsId>>& sorted) {
  SequenceTable table;
  std::map<std::vector<ObsId>, int> id_of;
  for (const auto& seq : sorted) {
    Node node;
    node.obs = seq.back();
    node.length = static_cast<int>(seq.size());
    if (seq.size() > 1) {
      std::vector<ObsId> prefix(seq.begin(), seq.end() - 1);
      auto it = id_of.find(prefix);
      if (it == id_of.end()) {
        throw Error(ErrorCode::kMalformed, "sequence set is not prefix-closed");
      }
      node.parent = it->second;
    }
    int id = table.size();
    id_of[seq] = id;
    table.nodes_.push_back(node);
    if (node.parent < 0) {
      table.roots_.push_back(id);
    } else {
      table.nodes_[node.parent].children.push_back(id);
    }
    table.child_index_[{node.parent, node.obs}] = id;
  }
  // Pre-order ids: a subtree ends where the next non-descendant begins.
  for (int id = table.size() - 1; id >= 0; --id) {
    int size = 1;
    for (int c : table.nodes_[id].children) size += table.nodes_[c].subtree_size;
    table.nodes_[id].subtree_size = size;
  }
  return table;
}

namespace {

void Fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

std::string StateName(StateId s) { return "state " + std::to_string(s); }

SequenceTable ExploreSequences(const Posg& g, Player p) {
  std::set<std::vector<ObsId>> sequences;
  std::set<std::pair<StateId, std::vector<ObsId>>> visited;
  std::vector<std::pair<StateId, std::vector<ObsId>>> frontier;
  for (const auto& [s, prob] : g.start()) {
    if (g.IsTerminal(s)) continue;
    std::vector<ObsId> seq{g.Observation(s, p)};
    if (visited.insert({s, seq}).second) frontier.push_back({s, seq});
  }
  while (!frontier.empty()) {
    auto [s, seq] = std::move(frontier.back());
    frontier.pop_back();
    sequences.insert(seq);
    for (Action a1 = 0; a1 < g.num_actions(Player::kOne); ++a1) {
      for (Action a2 = 0; a2 < g.num_actions(Player::kTwo); ++a2) {
        for (const Outcome& o : g.Transition(s, a1, a2)) {
          if (g.IsTerminal(o.next)) continue;
          std::vector<ObsId> next = seq;
          next.push_back(g.Observation(o.next, p));
          if (visited.insert({o.next, next}).second) {
            frontier.push_back({o.next, std::move(next)});
          }
        }
      }
    }
  }
  return SequenceTable::FromSequences({sequences.begin(), sequences.end()});
}

}  // namespace

Posg Posg::Build(PosgSpec spec) {
  const int n = spec.num_states;
  if (n <= 0) Fail(ErrorCode::kMalformed, "game needs at least one state");
  if (spec.num_actions[0] <= 0 || spec.num_actions[1] <= 0) {
    Fail(ErrorCode::kMalformed, "action counts must be positive");
  }
  const int a1_count = spec.num_actions[0];
  const int a2_count = spec.num_actions[1];

  Posg g;
  g.terminal_.assign(n, false);
  g.reward1_.assign(n, Rational(0));
  g.reward2_.assign(n, Rational(0));
  g.obs_.assign(n, {-1, -1});
  g.rows_.assign(n, {});

  for (const auto& [s, r] : spec.rewards) {
    if (s < 0 || s >= n) Fail(ErrorCode::kDanglingState, "reward on unknown " + StateName(s));
    g.terminal_[s] = true;
    g.reward1_[s] = r.first;
    g.reward2_[s] = r.second;
  }

  for (TransitionSpec& t : spec.transitions) {
    if (t.state < 0 || t.state >= n) {
      Fail(ErrorCode::kDanglingState, "transition from unknown " + StateName(t.state));
    }
    if (g.terminal_[t.state]) {
      Fail(ErrorCode::kRewardOnNonterminal,
           StateName(t.state) + " carries a reward and has transitions");
    }
    if (t.a1 < 0 || t.a1 >= a1_count || t.a2 < 0 || t.a2 >= a2_count) {
      Fail(ErrorCode::kMalformed, "action out of range at " + StateName(t.state));
    }
    auto& row_set = g.rows_[t.state];
    if (row_set.empty()) row_set.resize(a1_count * a2_count);
    auto& row = row_set[t.a1 * a2_count + t.a2];
    if (!row.empty()) {
      Fail(ErrorCode::kMalformed, "duplicate transition row at " + StateName(t.state));
    }
    std::map<StateId, Rational> merged;
    Rational total = 0;
    for (const Outcome& o : t.outcomes) {
      if (o.next < 0 || o.next >= n) {
        Fail(ErrorCode::kDanglingState, "transition into unknown " + StateName(o.next));
      }
      if (o.prob < 0) {
        Fail(ErrorCode::kNonStochasticTransition,
             "negative probability at " + StateName(t.state));
      }
      total += o.prob;
      if (o.prob > 0) merged[o.next] += o.prob;
    }
    if (total != 1) {
      Fail(ErrorCode::kNonStochasticTransition,
           "row (" + StateName(t.state) + ", " + std::to_string(t.a1) + ", " +
               std::to_string(t.a2) + ") sums to " + FormatRational(total));
    }
    t.outcomes.clear();
    for (auto& [next, prob] : merged) {
      t.outcomes.push_back({next, prob});
      row.push_back({next, prob});
    }
  }
  std::sort(spec.transitions.begin(), spec.transitions.end(),
            [](const TransitionSpec& x, const TransitionSpec& y) {
              return std::tie(x.state, x.a1, x.a2) < std::tie(y.state, y.a1, y.a2);
            });

  for (const auto& [s, o] : spec.observations) {
    if (s < 0 || s >= n) Fail(ErrorCode::kDanglingState, "observation of unknown " + StateName(s));
    if (g.terminal_[s]) Fail(ErrorCode::kMalformed, "terminal " + StateName(s) + " has an observation");
    if (o.first < 0 || o.second < 0) Fail(ErrorCode::kMalformed, "negative observation id");
    g.obs_[s] = {o.first, o.second};
  }

  for (StateId s = 0; s < n; ++s) {
    if (g.terminal_[s]) continue;
    if (g.rows_[s].empty()) {
      Fail(ErrorCode::kDanglingState, StateName(s) + " is neither terminal nor has transitions");
    }
    for (const auto& row : g.rows_[s]) {
      if (row.empty()) {
        Fail(ErrorCode::kDanglingState, StateName(s) + " lacks a transition row");
      }
    }
    if (g.obs_[s][0] < 0) Fail(ErrorCode::kDanglingState, StateName(s) + " has no observation");
  }

  std::map<StateId, Rational> start;
  Rational start_total = 0;
  for (const auto& [s, prob] : spec.start) {
    if (s < 0 || s >= n) Fail(ErrorCode::kInvalidStartDistribution, "unknown start " + StateName(s));
    if (prob < 0) Fail(ErrorCode::kInvalidStartDistribution, "negative start probability");
    start_total += prob;
    if (prob > 0) start[s] += prob;
  }
  if (start_total != 1) {
    Fail(ErrorCode::kInvalidStartDistribution,
         "start distribution sums to " + FormatRational(start_total));
  }
  spec.start.assign(start.begin(), start.end());

  // Longest path by memoised DFS; a grey node on the stack means a cycle.
  std::vector<int> colour(n, 0);
  std::vector<int> longest(n, 0);
  std::function<void(StateId)> visit = [&](StateId s) {
    colour[s] = 1;
    int best = 0;
    if (!g.terminal_[s]) {
      for (const auto& row : g.rows_[s]) {
        for (const Outcome& o : row) {
          if (colour[o.next] == 1) {
            Fail(ErrorCode::kCyclicTransitionGraph, "cycle through " + StateName(o.next));
          }
          if (colour[o.next] == 0) visit(o.next);
          best = std::max(best, longest[o.next] + 1);
        }
      }
    }
    longest[s] = best;
    colour[s] = 2;
  };
  for (StateId s = 0; s < n; ++s) {
    if (colour[s] == 0) visit(s);
  }
  g.depth_ = *std::max_element(longest.begin(), longest.end());

  if (spec.zero_sum) {
    for (StateId s = 0; s < n; ++s) {
      if (g.terminal_[s] && g.reward1_[s] + g.reward2_[s] != 0) {
        Fail(ErrorCode::kZeroSumViolation, "rewards do not cancel at " + StateName(s));
      }
    }
  }

  g.spec_ = std::move(spec);
  g.sequences_[0] = ExploreSequences(g, Player::kOne);
  g.sequences_[1] = ExploreSequences(g, Player::kTwo);
  return g;
}

BigInt Posg::NumPurePolicies(Player p) const {
  BigInt count = 1;
  for (int i = 0; i < PolicyDomainSize(p); ++i) count *= num_actions(p);
  return count;
}

int Posg::NumTerminals() const {
  return static_cast<int>(std::count(terminal_.begin(), terminal_.end(), true));
}

bool Posg::IsFullyObservable() const {
  std::set<ObsId> seen;
  for (StateId s = 0; s < num_states(); ++s) {
    if (terminal_[s]) continue;
    if (obs_[s][0] != obs_[s][1]) return false;
    if (!seen.insert(obs_[s][0]).second) return false;
  }
  return true;
}

bool Posg::IsTreeForm() const {
  std::vector<int> indegree(num_states(), 0);
  for (StateId s = 0; s < num_states(); ++s) {
    if (terminal_[s]) continue;
    for (const auto& row : rows_[s]) {
      for (const Outcome& o : row) ++indegree[o.next];
    }
  }
  std::vector<bool> is_start(num_states(), false);
  for (const auto& [s, prob] : start()) is_start[s] = true;
  for (StateId s = 0; s < num_states(); ++s) {
    if (indegree[s] != (is_start[s] ? 0 : 1)) return false;
  }
  return true;
}

void CheckDomain(const Posg& g, const PurePolicy& policy) {
  if (static_cast<int>(policy.actions.size()) != g.PolicyDomainSize(policy.player)) {
    throw Error(ErrorCode::kDomainMismatch,
                std::string(PlayerName(policy.player)) + " policy has " +
                    std::to_string(policy.actions.size()) + " entries, game expects " +
                    std::to_string(g.PolicyDomainSize(policy.player)));
  }
  for (Action a : policy.actions) {
    if (a < 0 || a >= g.num_actions(policy.player)) {
      throw Error(ErrorCode::kDomainMismatch, "action out of range in policy");
    }
  }
}

namespace {

void CheckIndexable(const Posg& g, Player p) {
  if (g.NumPurePolicies(p) > BigInt(std::to_string(std::numeric_limits<std::int64_t>::max()))) {
    throw Error(ErrorCode::kEnumerationCapExceeded,
                "policy space does not fit a 63-bit index");
  }
}

}  // namespace

PolicyIndex CanonicalIndex(const Posg& g, const PurePolicy& policy) {
  CheckDomain(g, policy);
  CheckIndexable(g, policy.player);
  PolicyIndex index = 0;
  const auto radix = static_cast<PolicyIndex>(g.num_actions(policy.player));
  for (Action a : policy.actions) index = index * radix + static_cast<PolicyIndex>(a);
  return index;
}

PurePolicy PolicyFromIndex(const Posg& g, Player player, PolicyIndex index) {
  CheckIndexable(g, player);
  if (BigInt(std::to_string(index)) >= g.NumPurePolicies(player)) {
    throw Error(ErrorCode::kIndexOutOfRange, "policy index " + std::to_string(index));
  }
  PurePolicy policy{player, std::vector<Action>(g.PolicyDomainSize(player), 0)};
  const auto radix = static_cast<PolicyIndex>(g.num_actions(player));
  for (int i = g.PolicyDomainSize(player) - 1; i >= 0; --i) {
    policy.actions[i] = static_cast<Action>(index % radix);
    index /= radix;
  }
  return policy;
}

MixedPolicy::MixedPolicy(Player player, std::vector<Entry> support)
    : player_(player), support_(std::move(support)) {
  if (support_.empty()) throw Error(ErrorCode::kInvalidArgument, "empty mixed policy");
  Rational total = 0;
  std::set<PurePolicy> seen;
  for (const auto& [policy, weight] : support_) {
    if (policy.player != player_) {
      throw Error(ErrorCode::kInvalidArgument, "mixed policy mixes players");
    }
    if (weight <= 0) throw Error(ErrorCode::kInvalidArgument, "non-positive weight");
    if (!seen.insert(policy).second) {
      throw Error(ErrorCode::kInvalidArgument, "duplicate policy in support");
    }
    total += weight;
  }
  if (total != 1) {
    throw Error(ErrorCode::kInvalidArgument, "weights sum to " + FormatRational(total));
  }
}

MixedPolicy MixedPolicy::Pure(PurePolicy policy) {
  Player p = policy.player;
  return MixedPolicy(p, {{std::move(policy), Rational(1)}});
}

namespace {

using Layer = std::map<std::tuple<StateId, int, int>, Rational>;

// Walks the profile forward one step at a time. `on_step` sees the live
// layer after each step together with the absorbed reward totals.
template <typename OnStep>
ValuePair Propagate(const Posg& g, const PurePolicy& p1, const PurePolicy& p2,
                    OnStep on_step) {
  CheckDomain(g, p1);
  CheckDomain(g, p2);
  if (p1.player != Player::kOne || p2.player != Player::kTwo) {
    throw Error(ErrorCode::kDomainMismatch, "profile players out of order");
  }
  const SequenceTable& seq1 = g.Sequences(Player::kOne);
  const SequenceTable& seq2 = g.Sequences(Player::kTwo);
  ValuePair value{0, 0};
  Rational absorbed = 0;

  auto deliver = [&](Layer& layer, StateId s, int n1, int n2, const Rational& mass) {
    if (g.IsTerminal(s)) {
      absorbed += mass;
      value.v1 += mass * g.Reward(s, Player::kOne);
      value.v2 += mass * g.Reward(s, Player::kTwo);
      return;
    }
    int c1 = seq1.Child(n1, g.Observation(s, Player::kOne));
    int c2 = seq2.Child(n2, g.Observation(s, Player::kTwo));
    layer[{s, c1, c2}] += mass;
  };

  Layer layer;
  for (const auto& [s, prob] : g.start()) deliver(layer, s, -1, -1, prob);
  on_step(layer, absorbed);
  while (!layer.empty()) {
    Layer next;
    for (const auto& [key, mass] : layer) {
      auto [s, n1, n2] = key;
      for (const Outcome& o : g.Transition(s, p1.actions[n1], p2.actions[n2])) {
        deliver(next, o.next, n1, n2, mass * o.prob);
      }
    }
    layer = std::move(next);
    on_step(layer, absorbed);
  }
  return value;
}

}  // namespace

ValuePair EvaluateProfile(const Posg& g, const PurePolicy& p1, const PurePolicy& p2) {
  return Propagate(g, p1, p2, [](const Layer&, const Rational&) {});
}

std::vector<MassStep> ForwardMass(const Posg& g, const PurePolicy& p1,
                                  const PurePolicy& p2) {
  std::vector<MassStep> steps;
  Propagate(g, p1, p2, [&](const Layer& layer, const Rational& absorbed) {
    Rational live = 0;
    for (const auto& [key, mass] : layer) live += mass;
    steps.push_back({live, absorbed});
  });
  return steps;
}

ValuePair EvaluateMixed(const Posg& g, const MixedPolicy& m1, const MixedPolicy& m2) {
  ValuePair total{0, 0};
  for (const auto& [p1, w1] : m1.support()) {
    for (const auto& [p2, w2] : m2.support()) {
      ValuePair v = EvaluateProfile(g, p1, p2);
      Rational w = w1 * w2;
      total.v1 += w * v.v1;
      total.v2 += w * v.v2;
    }
  }
  return total;
}

NormalFormGame InducedNormalForm(const Posg& g, std::uint64_t cap) {
  BigInt cells = g.NumPurePolicies(Player::kOne) * g.NumPurePolicies(Player::kTwo);
  if (cells > BigInt(std::to_string(cap))) {
    throw Error(ErrorCode::kEnumerationCapExceeded,
                "normal form has " + cells.get_str() + " cells, cap " + std::to_string(cap));
  }
  const int rows = static_cast<int>(g.NumPurePolicies(Player::kOne).get_ui());
  const int cols = static_cast<int>(g.NumPurePolicies(Player::kTwo).get_ui());
  std::vector<PurePolicy> p2s;
  p2s.reserve(cols);
  for (int c = 0; c < cols; ++c) p2s.push_back(PolicyFromIndex(g, Player::kTwo, c));

  NormalFormGame nfg;
  nfg.payoff1 = Matrix(rows, cols);
  nfg.payoff2 = Matrix(rows, cols);
  nfg.zero_sum = g.zero_sum();
  for (int r = 0; r < rows; ++r) {
    PurePolicy p1 = PolicyFromIndex(g, Player::kOne, r);
    nfg.row_labels.push_back(r);
    for (int c = 0; c < cols; ++c) {
      ValuePair v = EvaluateProfile(g, p1, p2s[c]);
      nfg.payoff1(r, c) = v.v1;
      nfg.payoff2(r, c) = v.v2;
    }
  }
  for (int c = 0; c < cols; ++c) nfg.col_labels.push_back(c);
  return nfg;
}

}  // namespace dolab
