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

#include "dolab/best_response.h"

#include <algorithm>
#include <map>
#include <memory>
#include <tuple>
#include <utility>

#include "dolab/errors.h"

namespace dolab {
namespace {

// (state, opponent sequence node, opponent support index) -> mass.
using Dist = std::map<std::tuple<StateId, int, int>, Rational>;

struct NodeResult;

struct Branch {
  Action action = 0;
  BigInt count;
  // One slot per child of the node; null when the child is never reached.
  std::vector<std::shared_ptr<const NodeResult>> children;
};

struct NodeResult {
  Rational value;
  BigInt count;
  std::vector<Branch> optimal;  // ascending action
};

class Solver {
 public:
  Solver(const Posg& g, Player player, const MixedPolicy& opp)
      : g_(g), player_(player), opp_player_(Opponent(player)), opp_(opp),
        own_(g.Sequences(player)), theirs_(g.Sequences(Opponent(player))) {
    if (opp.player() != opp_player_) {
      throw Error(ErrorCode::kDomainMismatch, "opponent mixture belongs to the responder");
    }
    if (g.PolicyDomainSize(player) > kMaxResponseDomain) {
      throw Error(ErrorCode::kEnumerationCapExceeded,
                  "response domain has " + std::to_string(g.PolicyDomainSize(player)) +
                      " sequences");
    }
    for (const auto& [policy, weight] : opp.support()) CheckDomain(g, policy);
    num_actions_ = g.num_actions(player);
  }

  // Solves every root; the constant from terminal start states goes to `base`.
  void Run() {
    std::map<int, Dist> root_dists;
    base_ = 0;
    for (const auto& [s, prob] : g_.start()) {
      if (g_.IsTerminal(s)) {
        base_ += prob * g_.Reward(s, player_);
        continue;
      }
      int own = own_.Child(-1, g_.Observation(s, player_));
      int other = theirs_.Child(-1, g_.Observation(s, opp_player_));
      for (int j = 0; j < static_cast<int>(opp_.support().size()); ++j) {
        root_dists[own][{s, other, j}] += prob * opp_.support()[j].second;
      }
    }
    value_ = base_;
    count_ = 1;
    for (int root : own_.roots()) {
      auto it = root_dists.find(root);
      std::shared_ptr<const NodeResult> result;
      if (it != root_dists.end()) {
        result = Solve(root, it->second);
        value_ += result->value;
        count_ *= result->count;
      } else {
        count_ *= FreeCount(root);
      }
      roots_.push_back(result);
    }
  }

  const Rational& value() const { return value_; }
  const BigInt& count() const { return count_; }

  PurePolicy Witness(std::mt19937_64* rng) const {
    PurePolicy policy{player_, std::vector<Action>(own_.size(), 0)};
    const auto& roots = own_.roots();
    for (std::size_t i = 0; i < roots.size(); ++i) {
      Fill(roots[i], roots_[i].get(), rng, policy.actions);
    }
    return policy;
  }

  std::vector<PurePolicy> Enumerate() const {
    std::vector<std::vector<Action>> partial{std::vector<Action>(own_.size(), 0)};
    const auto& roots = own_.roots();
    for (std::size_t i = 0; i < roots.size(); ++i) {
      partial = Expand(roots[i], roots_[i].get(), std::move(partial));
    }
    std::vector<PurePolicy> out;
    out.reserve(partial.size());
    for (auto& actions : partial) out.push_back({player_, std::move(actions)});
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  BigInt FreeCount(int node) const {
    BigInt out;
    mpz_ui_pow_ui(out.get_mpz_t(), num_actions_, own_.node(node).subtree_size);
    return out;
  }

  std::shared_ptr<const NodeResult> Solve(int node, const Dist& dist) {
    auto key = std::make_pair(node, dist);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    const auto& children = own_.node(node).children;
    auto result = std::make_shared<NodeResult>();
    bool first = true;
    for (Action a = 0; a < num_actions_; ++a) {
      Rational value = 0;
      std::map<int, Dist> child_dists;
      for (const auto& [entry, mass] : dist) {
        auto [s, other, j] = entry;
        Action b = opp_.support()[j].first.actions[other];
        auto outcomes = player_ == Player::kOne ? g_.Transition(s, a, b)
                                                : g_.Transition(s, b, a);
        for (const Outcome& o : outcomes) {
          Rational m = mass * o.prob;
          if (g_.IsTerminal(o.next)) {
            value += m * g_.Reward(o.next, player_);
            continue;
          }
          int own = own_.Child(node, g_.Observation(o.next, player_));
          int next_other = theirs_.Child(other, g_.Observation(o.next, opp_player_));
          child_dists[own][{o.next, next_other, j}] += m;
        }
      }
      Branch branch{a, BigInt(1), {}};
      for (int c : children) {
        auto it = child_dists.find(c);
        if (it == child_dists.end()) {
          branch.children.push_back(nullptr);
          branch.count *= FreeCount(c);
          continue;
        }
        auto sub = Solve(c, it->second);
        value += sub->value;
        branch.count *= sub->count;
        branch.children.push_back(std::move(sub));
      }
      if (first || value > result->value) {
        first = false;
        result->value = value;
        result->count = 0;
        result->optimal.clear();
      }
      if (value == result->value) {
        result->count += branch.count;
        result->optimal.push_back(std::move(branch));
      }
    }
    memo_.emplace(std::move(key), result);
    return result;
  }

  void FillFree(int node, std::mt19937_64* rng, std::vector<Action>& actions) const {
    const int end = node + own_.node(node).subtree_size;
    for (int n = node; n < end; ++n) {
      actions[n] = rng == nullptr
                       ? 0
                       : static_cast<Action>(UniformBelow(BigInt(num_actions_), *rng).get_ui());
    }
  }

  void Fill(int node, const NodeResult* result, std::mt19937_64* rng,
            std::vector<Action>& actions) const {
    if (result == nullptr) {
      FillFree(node, rng, actions);
      return;
    }
    const Branch* chosen = &result->optimal.front();
    if (rng != nullptr && result->optimal.size() > 1) {
      BigInt draw = UniformBelow(result->count, *rng);
      for (const Branch& b : result->optimal) {
        if (draw < b.count) {
          chosen = &b;
          break;
        }
        draw -= b.count;
      }
    }
    actions[node] = chosen->action;
    const auto& children = own_.node(node).children;
    for (std::size_t i = 0; i < children.size(); ++i) {
      Fill(children[i], chosen->children[i].get(), rng, actions);
    }
  }

  std::vector<std::vector<Action>> Expand(int node, const NodeResult* result,
                                          std::vector<std::vector<Action>> partial) const {
    if (result == nullptr) {
      const int end = node + own_.node(node).subtree_size;
      for (int n = node; n < end; ++n) {
        std::vector<std::vector<Action>> next;
        for (const auto& p : partial) {
          for (Action a = 0; a < num_actions_; ++a) {
            next.push_back(p);
            next.back()[n] = a;
          }
        }
        partial = std::move(next);
      }
      return partial;
    }
    std::vector<std::vector<Action>> out;
    for (const Branch& b : result->optimal) {
      std::vector<std::vector<Action>> branch = partial;
      for (auto& p : branch) p[node] = b.action;
      const auto& children = own_.node(node).children;
      for (std::size_t i = 0; i < children.size(); ++i) {
        branch = Expand(children[i], b.children[i].get(), std::move(branch));
      }
      for (auto& p : branch) out.push_back(std::move(p));
    }
    return out;
  }

  const Posg& g_;
  Player player_;
  Player opp_player_;
  const MixedPolicy& opp_;
  const SequenceTable& own_;
  const SequenceTable& theirs_;
  int num_actions_ = 1;
  Rational base_;
  Rational value_;
  BigInt count_;
  std::vector<std::shared_ptr<const NodeResult>> roots_;
  std::map<std::pair<int, Dist>, std::shared_ptr<const NodeResult>> memo_;
};

}  // namespace

BigInt UniformBelow(const BigInt& bound, std::mt19937_64& rng) {
  if (bound <= 0) throw Error(ErrorCode::kInvalidArgument, "empty sampling range");
  if (bound == 1) return 0;
  const std::size_t bits = mpz_sizeinbase(BigInt(bound - 1).get_mpz_t(), 2);
  const std::size_t words = (bits + 63) / 64;
  while (true) {
    BigInt draw = 0;
    for (std::size_t w = 0; w < words; ++w) {
      std::uint64_t word = rng();
      if (w == 0 && bits % 64 != 0) word &= (std::uint64_t{1} << (bits % 64)) - 1;
      draw <<= 64;
      draw += BigInt(std::to_string(word));
    }
    if (draw < bound) return draw;
  }
}

Rational ValueAgainst(const Posg& g, Player player, const PurePolicy& candidate,
                      const MixedPolicy& opp) {
  if (candidate.player != player || opp.player() != Opponent(player)) {
    throw Error(ErrorCode::kDomainMismatch, "profile players out of order");
  }
  Rational total = 0;
  for (const auto& [policy, weight] : opp.support()) {
    ValuePair v = player == Player::kOne ? EvaluateProfile(g, candidate, policy)
                                         : EvaluateProfile(g, policy, candidate);
    total += weight * v[player];
  }
  return total;
}

BestResponseResult BestResponse(const Posg& g, Player player, const MixedPolicy& opp,
                                const ResponseRequest& request) {
  Solver solver(g, player, opp);
  solver.Run();
  BestResponseResult out{solver.value(), {}, solver.count()};
  switch (request.select) {
    case ResponseSelect::kLexicographic:
      out.witness = solver.Witness(nullptr);
      break;
    case ResponseSelect::kSeededUniform:
      if (request.rng == nullptr) {
        throw Error(ErrorCode::kInvalidArgument, "seeded response without a generator");
      }
      out.witness = solver.Witness(request.rng);
      break;
    case ResponseSelect::kScripted: {
      if (request.candidate == nullptr) {
        throw Error(ErrorCode::kInvalidArgument, "scripted response without a candidate");
      }
      CheckDomain(g, *request.candidate);
      Rational v = ValueAgainst(g, player, *request.candidate, opp);
      if (v != out.value) {
        throw Error(ErrorCode::kScriptedCandidateSuboptimal,
                    "candidate earns " + FormatRational(v) + ", best is " +
                        FormatRational(out.value));
      }
      out.witness = *request.candidate;
      break;
    }
  }
  return out;
}

bool IsBestResponse(const Posg& g, Player player, const PurePolicy& candidate,
                    const MixedPolicy& opp) {
  Solver solver(g, player, opp);
  solver.Run();
  return ValueAgainst(g, player, candidate, opp) == solver.value();
}

BigInt CountBestResponses(const Posg& g, Player player, const MixedPolicy& opp) {
  Solver solver(g, player, opp);
  solver.Run();
  return solver.count();
}

std::vector<PurePolicy> EnumerateBestResponses(const Posg& g, Player player,
                                               const MixedPolicy& opp, std::uint64_t limit) {
  Solver solver(g, player, opp);
  solver.Run();
  if (solver.count() > BigInt(std::to_string(limit))) {
    throw Error(ErrorCode::kEnumerationCapExceeded,
                solver.count().get_str() + " best responses, limit " + std::to_string(limit));
  }
  return solver.Enumerate();
}

}  // namespace dolab
