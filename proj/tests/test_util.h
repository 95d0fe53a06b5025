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

#ifndef DOLAB_TESTS_TEST_UTIL_H_
#define DOLAB_TESTS_TEST_UTIL_H_

#include <random>
#include <utility>
#include <vector>

#include "dolab/game_oracle.h"
#include "dolab/normal_form.h"
#include "dolab/posg.h"
#include "dolab/rational.h"

namespace dolab::testing {

// Brute-force reference for best responses: every pure policy is evaluated
// against every support policy of the opponent with EvaluateProfile.
struct BruteResponse {
  Rational value;
  std::vector<PolicyIndex> optimal;  // ascending
};

inline BruteResponse BruteForceResponse(const Posg& g, Player p, const IndexMixture& opp) {
  BruteResponse out;
  const PolicyIndex n = g.NumPurePolicies(p).get_ui();
  for (PolicyIndex i = 0; i < n; ++i) {
    PurePolicy mine = PolicyFromIndex(g, p, i);
    Rational v = 0;
    for (const auto& [j, w] : opp) {
      PurePolicy theirs = PolicyFromIndex(g, Opponent(p), j);
      ValuePair vp = p == Player::kOne ? EvaluateProfile(g, mine, theirs)
                                       : EvaluateProfile(g, theirs, mine);
      v += w * vp[p];
    }
    if (out.optimal.empty() || v > out.value) {
      out.value = v;
      out.optimal = {i};
    } else if (v == out.value) {
      out.optimal.push_back(i);
    }
  }
  return out;
}

// Random mixture over at most `max_support` distinct indices below `n` with
// small-denominator weights.
inline IndexMixture RandomMixture(PolicyIndex n, int max_support, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> size_dist(1, max_support);
  std::uniform_int_distribution<PolicyIndex> index_dist(0, n - 1);
  std::uniform_int_distribution<int> weight_dist(1, 9);
  std::vector<std::pair<PolicyIndex, int>> raw;
  const int size = std::min<int>(size_dist(rng), static_cast<int>(n));
  while (static_cast<int>(raw.size()) < size) {
    PolicyIndex i = index_dist(rng);
    bool seen = false;
    for (const auto& e : raw) seen = seen || e.first == i;
    if (!seen) raw.push_back({i, weight_dist(rng)});
  }
  std::sort(raw.begin(), raw.end());
  int total = 0;
  for (const auto& e : raw) total += e.second;
  IndexMixture m;
  for (const auto& [i, w] : raw) m.push_back({i, MakeRational(w, total)});
  return m;
}

inline Matrix MatrixOf(const std::vector<std::vector<int>>& rows) {
  Matrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) m(r, c) = rows[r][c];
  }
  return m;
}

inline NormalFormGame MatchingPennies() {
  return NormalFormGame::ZeroSum(MatrixOf({{1, -1}, {-1, 1}}));
}

inline NormalFormGame RockPaperScissors() {
  return NormalFormGame::ZeroSum(MatrixOf({{0, -1, 1}, {1, 0, -1}, {-1, 1, 0}}));
}

// One-shot matching pennies written as a POSG: a root and four terminals.
inline PosgSpec MatchingPenniesSpec() {
  PosgSpec spec;
  spec.name = "matching pennies";
  spec.num_states = 5;
  spec.num_actions = {2, 2};
  spec.zero_sum = true;
  spec.start = {{0, 1}};
  spec.observations[0] = {0, 0};
  for (int a1 = 0; a1 < 2; ++a1) {
    for (int a2 = 0; a2 < 2; ++a2) {
      const int s = 1 + 2 * a1 + a2;
      const int r = a1 == a2 ? 1 : -1;
      spec.rewards[s] = {r, -r};
      spec.transitions.push_back({0, a1, a2, {{s, 1}}});
    }
  }
  return spec;
}

}  // namespace dolab::testing

#endif  // DOLAB_TESTS_TEST_UTIL_H_
