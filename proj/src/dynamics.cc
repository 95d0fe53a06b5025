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

#include "dolab/dynamics.h"

#include <algorithm>
#include <array>
#include <map>
#include <random>
#include <set>
#include <variant>

#include "dolab/equilibrium.h"
#include "dolab/errors.h"

namespace dolab {
namespace {

constexpr std::array<std::pair<MetaNashMode, std::string_view>, 3> kMetaNashNames{{
    {MetaNashMode::kUniqueOrFail, "unique-or-fail"},
    {MetaNashMode::kLexicographic, "lexicographic"},
    {MetaNashMode::kScripted, "scripted"},
}};

constexpr std::array<std::pair<ResponseMode, std::string_view>, 4> kResponseNames{{
    {ResponseMode::kUniqueOrFail, "unique-or-fail"},
    {ResponseMode::kLexicographic, "lexicographic"},
    {ResponseMode::kSeededRandom, "seeded-random"},
    {ResponseMode::kScripted, "scripted"},
}};

constexpr std::array<std::pair<RunOutcome, std::string_view>, 7> kOutcomeNames{{
    {RunOutcome::kConverged, "converged"},
    {RunOutcome::kStalled, "stalled"},
    {RunOutcome::kMaxIters, "max-iters-exceeded"},
    {RunOutcome::kIllegalMetaNash, "illegal-scripted-meta-nash"},
    {RunOutcome::kIllegalBestResponse, "illegal-scripted-best-response"},
    {RunOutcome::kScheduleBlocked, "schedule-blocked"},
    {RunOutcome::kUniquenessViolation, "uniqueness-violation"},
}};

template <typename E, std::size_t N>
std::string_view NameOf(const std::array<std::pair<E, std::string_view>, N>& table, E value) {
  for (const auto& [e, name] : table) {
    if (e == value) return name;
  }
  return "?";
}

template <typename E, std::size_t N>
std::optional<E> ValueOf(const std::array<std::pair<E, std::string_view>, N>& table,
                         std::string_view name) {
  for (const auto& [e, n] : table) {
    if (n == name) return e;
  }
  return std::nullopt;
}

IndexMixture ToMixture(const std::vector<Rational>& strategy,
                       const std::vector<PolicyIndex>& labels) {
  IndexMixture out;
  for (std::size_t i = 0; i < strategy.size(); ++i) {
    if (strategy[i] != 0) out.push_back({labels[i], strategy[i]});
  }
  return out;
}

// Payoff cache over pure profiles, shared by every meta-game of a run.
class MetaGames {
 public:
  explicit MetaGames(const GameOracle& oracle) : oracle_(oracle) {}

  const ValuePair& Value(PolicyIndex p1, PolicyIndex p2) {
    auto it = cache_.find({p1, p2});
    if (it == cache_.end()) it = cache_.emplace(std::make_pair(p1, p2), oracle_.Evaluate(p1, p2)).first;
    return it->second;
  }

  NormalFormGame Build(const std::vector<PolicyIndex>& set1,
                       const std::vector<PolicyIndex>& set2) {
    NormalFormGame nfg;
    nfg.zero_sum = oracle_.zero_sum();
    nfg.payoff1 = Matrix(set1.size(), set2.size());
    nfg.payoff2 = Matrix(set1.size(), set2.size());
    for (std::size_t r = 0; r < set1.size(); ++r) {
      for (std::size_t c = 0; c < set2.size(); ++c) {
        const ValuePair& v = Value(set1[r], set2[c]);
        nfg.payoff1(r, c) = v.v1;
        nfg.payoff2(r, c) = v.v2;
      }
    }
    for (PolicyIndex i : set1) nfg.row_labels.push_back(static_cast<std::int64_t>(i));
    for (PolicyIndex i : set2) nfg.col_labels.push_back(static_cast<std::int64_t>(i));
    return nfg;
  }

 private:
  const GameOracle& oracle_;
  std::map<std::pair<PolicyIndex, PolicyIndex>, ValuePair> cache_;
};

PolicyIndex UniformIndex(const GameOracle& oracle, Player p, std::mt19937_64& rng) {
  return UniformBelow(oracle.NumPolicies(p), rng).get_ui();
}

struct Failure {
  RunOutcome outcome;
  std::string message;
};

struct MetaChoice {
  IndexMixture mu1;
  IndexMixture mu2;
  std::string cert;
};

std::vector<Rational> Dense(const IndexMixture& m, const std::vector<PolicyIndex>& set) {
  std::vector<Rational> out(set.size(), Rational(0));
  for (const auto& [index, w] : m) {
    out[std::lower_bound(set.begin(), set.end(), index) - set.begin()] = w;
  }
  return out;
}

bool Within(const IndexMixture& m, const std::vector<PolicyIndex>& set) {
  for (const auto& [index, w] : m) {
    if (!std::binary_search(set.begin(), set.end(), index)) return false;
  }
  return true;
}

std::variant<MetaChoice, Failure> ChooseMetaNash(MetaNashMode mode,
                                                 const std::optional<ScriptedProfile>& script,
                                                 const NormalFormGame& meta,
                                                 const std::vector<PolicyIndex>& set1,
                                                 const std::vector<PolicyIndex>& set2) {
  switch (mode) {
    case MetaNashMode::kScripted: {
      if (!script.has_value()) {
        return Failure{RunOutcome::kScheduleBlocked, "schedule has no meta-Nash"};
      }
      try {
        CheckMixture(script->m1);
        CheckMixture(script->m2);
      } catch (const Error& e) {
        return Failure{RunOutcome::kIllegalMetaNash, e.what()};
      }
      if (!Within(script->m1, set1) || !Within(script->m2, set2)) {
        return Failure{RunOutcome::kScheduleBlocked,
                       "scripted meta-Nash uses a policy outside the meta-game"};
      }
      Improvements impr = MatrixImprovements(meta, Dense(script->m1, set1),
                                             Dense(script->m2, set2));
      if (impr.impr1 != 0 || impr.impr2 != 0) {
        return Failure{RunOutcome::kIllegalMetaNash,
                       "scripted meta-Nash improvements " + FormatRational(impr.impr1) +
                           ", " + FormatRational(impr.impr2)};
      }
      return MetaChoice{script->m1, script->m2, "scripted:certified"};
    }
    case MetaNashMode::kLexicographic: {
      if (meta.zero_sum) {
        EquilibriumResult e = SolveZeroSumLexicographic(meta);
        return MetaChoice{ToMixture(e.row, set1), ToMixture(e.col, set2), "lexicographic"};
      }
      auto found = EnumerateNashBimatrix(meta, std::min(meta.rows(), meta.cols()),
                                         std::uint64_t{1} << 22, 1);
      if (found.empty()) {
        return Failure{RunOutcome::kUniquenessViolation, "no meta-Nash found"};
      }
      return MetaChoice{ToMixture(found[0].row, set1), ToMixture(found[0].col, set2),
                        "lexicographic:support-enumeration"};
    }
    case MetaNashMode::kUniqueOrFail: {
      if (meta.zero_sum) {
        UniquenessCertificate cert = IsUniqueZeroSumEquilibrium(meta);
        if (!cert.unique) {
          return Failure{RunOutcome::kUniquenessViolation,
                         std::string("meta-Nash of ") + PlayerName(*cert.witness_player) +
                             " is not unique"};
        }
        EquilibriumResult e = SolveZeroSum(meta);
        return MetaChoice{ToMixture(e.row, set1), ToMixture(e.col, set2), "unique:certified"};
      }
      auto found = EnumerateNashBimatrix(meta, std::min(meta.rows(), meta.cols()),
                                         std::uint64_t{1} << 22, 2);
      if (found.size() != 1) {
        return Failure{RunOutcome::kUniquenessViolation,
                       found.empty() ? "no meta-Nash found" : "meta-Nash is not unique"};
      }
      return MetaChoice{ToMixture(found[0].row, set1), ToMixture(found[0].col, set2),
                        "unique:support-enumeration"};
    }
  }
  return Failure{RunOutcome::kIllegalMetaNash, "unknown mode"};
}

struct ResponseChoice {
  OracleResponse response;
  std::string cert;
};

std::variant<ResponseChoice, Failure> ChooseResponse(const GameOracle& oracle, Player p,
                                                     const IndexMixture& opp,
                                                     ResponseMode mode,
                                                     std::optional<PolicyIndex> scripted,
                                                     std::mt19937_64& rng) {
  switch (mode) {
    case ResponseMode::kScripted: {
      if (!scripted.has_value()) {
        return Failure{RunOutcome::kScheduleBlocked, "schedule has no response"};
      }
      try {
        oracle.CheckIndex(p, *scripted);
        OracleResponse r =
            oracle.BestResponse(p, opp, ResponseSelect::kScripted, nullptr, &*scripted);
        return ResponseChoice{r, "scripted:certified"};
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kScriptedCandidateSuboptimal &&
            e.code() != ErrorCode::kDomainMismatch) {
          throw;
        }
        return Failure{RunOutcome::kIllegalBestResponse,
                       std::string(PlayerName(p)) + " candidate " +
                           std::to_string(*scripted) + ": " + e.what()};
      }
    }
    case ResponseMode::kSeededRandom:
      return ResponseChoice{
          oracle.BestResponse(p, opp, ResponseSelect::kSeededUniform, &rng, nullptr), "seeded"};
    case ResponseMode::kLexicographic:
      return ResponseChoice{
          oracle.BestResponse(p, opp, ResponseSelect::kLexicographic, nullptr, nullptr),
          "lexicographic"};
    case ResponseMode::kUniqueOrFail: {
      OracleResponse r =
          oracle.BestResponse(p, opp, ResponseSelect::kLexicographic, nullptr, nullptr);
      if (r.count != 1) {
        return Failure{RunOutcome::kUniquenessViolation,
                       std::string(PlayerName(p)) + " has " + r.count.get_str() +
                           " best responses"};
      }
      return ResponseChoice{r, "unique:certified"};
    }
  }
  return Failure{RunOutcome::kIllegalBestResponse, "unknown mode"};
}

bool ScheduleActive(const TiebreakPolicy& tiebreak, int t) {
  return tiebreak.schedule != nullptr && t <= tiebreak.schedule->length;
}

std::optional<PolicyIndex> ScriptedResponse(const TiebreakPolicy& tiebreak, int t, Player p,
                                            const IndexMixture& opp) {
  if (!ScheduleActive(tiebreak, t) || !tiebreak.schedule->response) return std::nullopt;
  return tiebreak.schedule->response(t, p, opp);
}

ResponseMode EffectiveResponseMode(const TiebreakPolicy& tiebreak, int t,
                                   const std::optional<PolicyIndex>& scripted) {
  if (tiebreak.best_response != ResponseMode::kScripted) return tiebreak.best_response;
  return scripted.has_value() ? ResponseMode::kScripted : tiebreak.best_response_fallback;
}

RunTrace RunOracleLoop(const GameOracle& oracle, const Rational& eps,
                       const std::optional<Rational>& alpha, const TiebreakPolicy& tiebreak,
                       int max_iters) {
  if (eps < 0) throw Error(ErrorCode::kInvalidArgument, "eps must be nonnegative");
  if (alpha.has_value() && *alpha <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "alpha must be positive");
  }
  if ((tiebreak.meta_nash == MetaNashMode::kScripted ||
       tiebreak.best_response == ResponseMode::kScripted) &&
      tiebreak.schedule == nullptr) {
    throw Error(ErrorCode::kInvalidArgument, "scripted mode without a schedule");
  }
  std::mt19937_64 rng(tiebreak.seed);
  RunTrace trace;
  trace.algorithm = alpha.has_value() ? "alpha-do" : "do";
  trace.eps = eps;
  trace.alpha = alpha;
  std::tie(trace.init1, trace.init2) = InitialProfile(oracle, tiebreak);
  if (!tiebreak.init.has_value()) {
    // Keep the response stream independent of how the start was drawn.
    rng.discard(2);
  }

  std::vector<PolicyIndex> set1{trace.init1};
  std::vector<PolicyIndex> set2{trace.init2};
  MetaGames metas(oracle);

  auto fail = [&](Failure f, IterationRecord rec, bool keep) {
    trace.outcome = f.outcome;
    trace.message = "iteration " + std::to_string(rec.t) + ": " + f.message;
    if (keep) trace.iterations.push_back(std::move(rec));
    return trace;
  };

  for (int t = 1; t <= max_iters; ++t) {
    IterationRecord rec;
    rec.t = t;
    rec.set1 = set1;
    rec.set2 = set2;
    NormalFormGame meta = metas.Build(set1, set2);

    MetaNashMode meta_mode = tiebreak.meta_nash;
    std::optional<ScriptedProfile> script;
    if (meta_mode == MetaNashMode::kScripted) {
      if (ScheduleActive(tiebreak, t) && tiebreak.schedule->meta_nash) {
        script = tiebreak.schedule->meta_nash(t);
      }
      if (!script.has_value()) meta_mode = tiebreak.meta_nash_fallback;
    }
    auto meta_choice = ChooseMetaNash(meta_mode, script, meta, set1, set2);
    if (auto* f = std::get_if<Failure>(&meta_choice)) return fail(*f, std::move(rec), false);
    MetaChoice& mc = std::get<MetaChoice>(meta_choice);
    rec.mu1 = mc.mu1;
    rec.mu2 = mc.mu2;
    rec.meta_cert = mc.cert;
    ValuePair meta_value = oracle.EvaluateMixed(rec.mu1, rec.mu2);
    rec.meta_value1 = meta_value.v1;
    rec.meta_value2 = meta_value.v2;
    for (const auto& [index, w] : rec.mu1) rec.max_support = std::max(rec.max_support, index);
    for (const auto& [index, w] : rec.mu2) rec.max_support = std::max(rec.max_support, index);

    for (Player p : {Player::kOne, Player::kTwo}) {
      const IndexMixture& opp = p == Player::kOne ? rec.mu2 : rec.mu1;
      std::optional<PolicyIndex> scripted = ScriptedResponse(tiebreak, t, p, opp);
      auto choice = ChooseResponse(oracle, p, opp, EffectiveResponseMode(tiebreak, t, scripted),
                                   scripted, rng);
      if (auto* f = std::get_if<Failure>(&choice)) return fail(*f, std::move(rec), false);
      ResponseChoice& rc = std::get<ResponseChoice>(choice);
      const Rational& current = meta_value[p];
      if (p == Player::kOne) {
        rec.br1 = rc.response.witness;
        rec.br_value1 = rc.response.value;
        rec.br_count1 = rc.response.count;
        rec.br_cert1 = rc.cert;
        rec.impr1 = rc.response.value - current;
      } else {
        rec.br2 = rc.response.witness;
        rec.br_value2 = rc.response.value;
        rec.br_count2 = rc.response.count;
        rec.br_cert2 = rc.cert;
        rec.impr2 = rc.response.value - current;
      }
    }
    rec.gap = rec.impr1 + rec.impr2;

    if (rec.gap <= eps) {
      trace.iterations.push_back(std::move(rec));
      trace.outcome = RunOutcome::kConverged;
      trace.iteration_count = t - 1;
      return trace;
    }

    auto add = [&](std::vector<PolicyIndex>& set, PolicyIndex index, const Rational& impr,
                   bool& added, bool& gated, Player p) {
      if (alpha.has_value() && impr < *alpha) {
        gated = true;
        if (!trace.first_gated.has_value()) trace.first_gated = std::make_pair(t, p);
        return;
      }
      auto it = std::lower_bound(set.begin(), set.end(), index);
      if (it != set.end() && *it == index) return;
      set.insert(it, index);
      added = true;
    };
    add(set1, rec.br1, rec.impr1, rec.added1, rec.gated1, Player::kOne);
    add(set2, rec.br2, rec.impr2, rec.added2, rec.gated2, Player::kTwo);
    const bool progressed = rec.added1 || rec.added2;
    trace.iterations.push_back(std::move(rec));
    if (!progressed) {
      trace.outcome = RunOutcome::kStalled;
      trace.iteration_count = t - 1;
      trace.message = "iteration " + std::to_string(t) + ": no policy added";
      return trace;
    }
  }
  trace.outcome = RunOutcome::kMaxIters;
  trace.iteration_count = max_iters;
  trace.message = "no convergence within " + std::to_string(max_iters) + " iterations";
  return trace;
}

OracleResponse SimpleResponse(const GameOracle& oracle, Player p, const IndexMixture& opp,
                              const TiebreakPolicy& tiebreak, int t, std::mt19937_64& rng) {
  std::optional<PolicyIndex> scripted = ScriptedResponse(tiebreak, t, p, opp);
  auto choice = ChooseResponse(oracle, p, opp, EffectiveResponseMode(tiebreak, t, scripted),
                               scripted, rng);
  if (auto* f = std::get_if<Failure>(&choice)) {
    if (f->outcome == RunOutcome::kUniquenessViolation) {
      return oracle.BestResponse(p, opp, ResponseSelect::kLexicographic, nullptr, nullptr);
    }
    throw Error(ErrorCode::kScriptedCandidateSuboptimal,
                "round " + std::to_string(t) + ": " + f->message);
  }
  return std::get<ResponseChoice>(choice).response;
}

}  // namespace

std::string_view MetaNashModeName(MetaNashMode mode) { return NameOf(kMetaNashNames, mode); }
std::string_view ResponseModeName(ResponseMode mode) { return NameOf(kResponseNames, mode); }
std::string_view RunOutcomeName(RunOutcome outcome) { return NameOf(kOutcomeNames, outcome); }

std::optional<MetaNashMode> ParseMetaNashMode(std::string_view name) {
  return ValueOf(kMetaNashNames, name);
}
std::optional<ResponseMode> ParseResponseMode(std::string_view name) {
  return ValueOf(kResponseNames, name);
}
std::optional<RunOutcome> ParseRunOutcome(std::string_view name) {
  return ValueOf(kOutcomeNames, name);
}

bool IsLegalityFailure(RunOutcome outcome) {
  return outcome == RunOutcome::kIllegalMetaNash ||
         outcome == RunOutcome::kIllegalBestResponse ||
         outcome == RunOutcome::kUniquenessViolation;
}

std::pair<PolicyIndex, PolicyIndex> InitialProfile(const GameOracle& oracle,
                                                   const TiebreakPolicy& tiebreak) {
  if (tiebreak.init.has_value()) {
    oracle.CheckIndex(Player::kOne, tiebreak.init->first);
    oracle.CheckIndex(Player::kTwo, tiebreak.init->second);
    return *tiebreak.init;
  }
  std::mt19937_64 rng(tiebreak.seed);
  PolicyIndex p1 = UniformIndex(oracle, Player::kOne, rng);
  PolicyIndex p2 = UniformIndex(oracle, Player::kTwo, rng);
  return {p1, p2};
}

RunTrace RunDoubleOracle(const GameOracle& oracle, const Rational& eps,
                         const TiebreakPolicy& tiebreak, int max_iters) {
  return RunOracleLoop(oracle, eps, std::nullopt, tiebreak, max_iters);
}

RunTrace RunAlphaDoubleOracle(const GameOracle& oracle, const Rational& eps,
                              const Rational& alpha, const TiebreakPolicy& tiebreak,
                              int max_iters) {
  return RunOracleLoop(oracle, eps, alpha, tiebreak, max_iters);
}

namespace {

IndexMixture Average(const std::map<PolicyIndex, int>& counts, int total) {
  IndexMixture out;
  for (const auto& [index, n] : counts) out.push_back({index, Rational(n, total)});
  for (auto& [index, w] : out) w.canonicalize();
  return out;
}

}  // namespace

FpTrace RunFictitiousPlay(const GameOracle& oracle, int rounds, const TiebreakPolicy& tiebreak) {
  if (rounds < 1) throw Error(ErrorCode::kInvalidArgument, "rounds must be at least 1");
  std::mt19937_64 rng(tiebreak.seed);
  auto [p1, p2] = InitialProfile(oracle, tiebreak);
  if (!tiebreak.init.has_value()) rng.discard(2);
  std::map<PolicyIndex, int> counts1{{p1, 1}};
  std::map<PolicyIndex, int> counts2{{p2, 1}};
  FpTrace trace;
  for (int t = 1; t <= rounds; ++t) {
    FpRound round;
    round.t = t;
    round.mu1 = Average(counts1, t);
    round.mu2 = Average(counts2, t);
    ValuePair v = oracle.EvaluateMixed(round.mu1, round.mu2);
    OracleResponse r1 = SimpleResponse(oracle, Player::kOne, round.mu2, tiebreak, t, rng);
    OracleResponse r2 = SimpleResponse(oracle, Player::kTwo, round.mu1, tiebreak, t, rng);
    round.br1 = r1.witness;
    round.br2 = r2.witness;
    round.impr1 = r1.value - v.v1;
    round.impr2 = r2.value - v.v2;
    round.exploitability = round.impr1 + round.impr2;
    if (round.exploitability == 0 && !trace.first_zero.has_value()) trace.first_zero = t;
    ++counts1[round.br1];
    ++counts2[round.br2];
    trace.rounds.push_back(std::move(round));
  }
  return trace;
}

BrdTrace RunBestResponseDynamics(const GameOracle& oracle, int rounds,
                                 const TiebreakPolicy& tiebreak) {
  if (rounds < 1) throw Error(ErrorCode::kInvalidArgument, "rounds must be at least 1");
  std::mt19937_64 rng(tiebreak.seed);
  BrdTrace trace;
  trace.profiles.push_back(InitialProfile(oracle, tiebreak));
  if (!tiebreak.init.has_value()) rng.discard(2);
  std::map<std::pair<PolicyIndex, PolicyIndex>, int> seen{{trace.profiles[0], 0}};
  for (int t = 1; t <= rounds; ++t) {
    auto [prev1, prev2] = trace.profiles.back();
    PolicyIndex next1 =
        SimpleResponse(oracle, Player::kOne, PureMixture(prev2), tiebreak, t, rng).witness;
    PolicyIndex next2 =
        SimpleResponse(oracle, Player::kTwo, PureMixture(prev1), tiebreak, t, rng).witness;
    std::pair<PolicyIndex, PolicyIndex> next{next1, next2};
    trace.profiles.push_back(next);
    if (next == std::make_pair(prev1, prev2)) {
      trace.converged = true;
      break;
    }
    auto [it, inserted] = seen.emplace(next, t);
    if (!inserted) {
      trace.cycle_start = it->second;
      trace.cycle_length = t - it->second;
      break;
    }
  }
  return trace;
}

}  // namespace dolab
