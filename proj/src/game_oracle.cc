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

#include "dolab/game_oracle.h"

#include <algorithm>
#include <set>
#include <string>

#include "dolab/errors.h"

namespace dolab {

IndexMixture PureMixture(PolicyIndex index) { return {{index, Rational(1)}}; }

void CheckMixture(const IndexMixture& m) {
  if (m.empty()) throw Error(ErrorCode::kInvalidArgument, "empty mixture");
  Rational total = 0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i > 0 && m[i].first <= m[i - 1].first) {
      throw Error(ErrorCode::kInvalidArgument, "mixture indices not ascending");
    }
    if (m[i].second <= 0) throw Error(ErrorCode::kInvalidArgument, "non-positive weight");
    total += m[i].second;
  }
  if (total != 1) {
    throw Error(ErrorCode::kInvalidArgument, "weights sum to " + FormatRational(total));
  }
}

void GameOracle::CheckIndex(Player p, PolicyIndex index) const {
  if (BigInt(std::to_string(index)) >= NumPolicies(p)) {
    throw Error(ErrorCode::kDomainMismatch, std::string(PlayerName(p)) + " policy index " +
                                                std::to_string(index) + " out of range");
  }
}

ValuePair GameOracle::EvaluateMixed(const IndexMixture& m1, const IndexMixture& m2) const {
  ValuePair total{0, 0};
  for (const auto& [p1, w1] : m1) {
    for (const auto& [p2, w2] : m2) {
      ValuePair v = Evaluate(p1, p2);
      Rational w = w1 * w2;
      total.v1 += w * v.v1;
      total.v2 += w * v.v2;
    }
  }
  return total;
}

Rational GameOracle::ValueAgainst(Player p, PolicyIndex index, const IndexMixture& opp) const {
  Rational total = 0;
  for (const auto& [other, w] : opp) {
    ValuePair v = p == Player::kOne ? Evaluate(index, other) : Evaluate(other, index);
    total += w * v[p];
  }
  return total;
}

ValuePair PosgOracle::Evaluate(PolicyIndex p1, PolicyIndex p2) const {
  CheckIndex(Player::kOne, p1);
  CheckIndex(Player::kTwo, p2);
  return EvaluateProfile(g_, PolicyFromIndex(g_, Player::kOne, p1),
                         PolicyFromIndex(g_, Player::kTwo, p2));
}

MixedPolicy PosgOracle::ToMixed(Player p, const IndexMixture& m) const {
  CheckMixture(m);
  std::vector<MixedPolicy::Entry> support;
  for (const auto& [index, w] : m) {
    CheckIndex(p, index);
    support.push_back({PolicyFromIndex(g_, p, index), w});
  }
  return MixedPolicy(p, std::move(support));
}

OracleResponse PosgOracle::BestResponse(Player p, const IndexMixture& opp,
                                        ResponseSelect select, std::mt19937_64* rng,
                                        const PolicyIndex* candidate) const {
  MixedPolicy mixed = ToMixed(Opponent(p), opp);
  PurePolicy scripted;
  ResponseRequest request{select, rng, nullptr};
  if (select == ResponseSelect::kScripted && candidate != nullptr) {
    CheckIndex(p, *candidate);
    scripted = PolicyFromIndex(g_, p, *candidate);
    request.candidate = &scripted;
  }
  BestResponseResult r = dolab::BestResponse(g_, p, mixed, request);
  return {CanonicalIndex(g_, r.witness), r.value, r.count};
}

std::vector<PolicyIndex> PosgOracle::AllBestResponses(Player p, const IndexMixture& opp,
                                                      std::uint64_t limit) const {
  std::vector<PolicyIndex> out;
  for (const PurePolicy& policy :
       EnumerateBestResponses(g_, p, ToMixed(Opponent(p), opp), limit)) {
    out.push_back(CanonicalIndex(g_, policy));
  }
  return out;
}

MatrixOracle::MatrixOracle(NormalFormGame nfg) : nfg_(std::move(nfg)) { nfg_.Validate(); }

BigInt MatrixOracle::NumPolicies(Player p) const {
  return p == Player::kOne ? nfg_.rows() : nfg_.cols();
}

ValuePair MatrixOracle::Evaluate(PolicyIndex p1, PolicyIndex p2) const {
  CheckIndex(Player::kOne, p1);
  CheckIndex(Player::kTwo, p2);
  return {nfg_.payoff1(static_cast<int>(p1), static_cast<int>(p2)),
          nfg_.payoff2(static_cast<int>(p1), static_cast<int>(p2))};
}

std::vector<Rational> MatrixOracle::Payoffs(Player p, const IndexMixture& opp) const {
  CheckMixture(opp);
  for (const auto& [index, w] : opp) CheckIndex(Opponent(p), index);
  const int n = p == Player::kOne ? nfg_.rows() : nfg_.cols();
  std::vector<Rational> out(n, Rational(0));
  for (int own = 0; own < n; ++own) {
    for (const auto& [other, w] : opp) {
      const int o = static_cast<int>(other);
      out[own] += w * (p == Player::kOne ? nfg_.payoff1(own, o) : nfg_.payoff2(o, own));
    }
  }
  return out;
}

OracleResponse MatrixOracle::BestResponse(Player p, const IndexMixture& opp,
                                          ResponseSelect select, std::mt19937_64* rng,
                                          const PolicyIndex* candidate) const {
  std::vector<Rational> payoff = Payoffs(p, opp);
  OracleResponse out;
  out.value = payoff.front();
  for (const Rational& v : payoff) out.value = std::max(out.value, v);
  std::vector<PolicyIndex> optimal;
  for (std::size_t i = 0; i < payoff.size(); ++i) {
    if (payoff[i] == out.value) optimal.push_back(i);
  }
  out.count = static_cast<unsigned long>(optimal.size());
  switch (select) {
    case ResponseSelect::kLexicographic:
      out.witness = optimal.front();
      break;
    case ResponseSelect::kSeededUniform:
      if (rng == nullptr) {
        throw Error(ErrorCode::kInvalidArgument, "seeded response without a generator");
      }
      out.witness = optimal[UniformBelow(out.count, *rng).get_ui()];
      break;
    case ResponseSelect::kScripted:
      if (candidate == nullptr) {
        throw Error(ErrorCode::kInvalidArgument, "scripted response without a candidate");
      }
      CheckIndex(p, *candidate);
      if (payoff[*candidate] != out.value) {
        throw Error(ErrorCode::kScriptedCandidateSuboptimal,
                    "candidate earns " + FormatRational(payoff[*candidate]) + ", best is " +
                        FormatRational(out.value));
      }
      out.witness = *candidate;
      break;
  }
  return out;
}

std::vector<PolicyIndex> MatrixOracle::AllBestResponses(Player p, const IndexMixture& opp,
                                                        std::uint64_t limit) const {
  OracleResponse r = BestResponse(p, opp, ResponseSelect::kLexicographic, nullptr, nullptr);
  if (r.count > BigInt(std::to_string(limit))) {
    throw Error(ErrorCode::kEnumerationCapExceeded, "too many best responses");
  }
  std::vector<Rational> payoff = Payoffs(p, opp);
  std::vector<PolicyIndex> out;
  for (std::size_t i = 0; i < payoff.size(); ++i) {
    if (payoff[i] == r.value) out.push_back(i);
  }
  return out;
}

}  // namespace dolab
