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

#include "dolab/families.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <string>

#include "dolab/errors.h"

namespace dolab {
namespace {

constexpr std::array<std::pair<Family, std::string_view>, 5> kFamilyNames{{
    {Family::kGuessTheString, "GuessTheString"},
    {Family::kBiggerNumber, "BiggerNumber"},
    {Family::kWeakBiggerNumber, "WeakBiggerNumber"},
    {Family::kIncrementing, "Incrementing"},
    {Family::kMatchingPenniesChain, "MatchingPenniesChain"},
}};

constexpr std::array<std::pair<Theorem, std::string_view>, 5> kTheoremNames{{
    {Theorem::kT1, "T1"},
    {Theorem::kT2, "T2"},
    {Theorem::kT3, "T3"},
    {Theorem::kT4, "T4"},
    {Theorem::kT5, "T5"},
}};

// Largest k accepted by the generators.
constexpr int kMaxK = 30;

std::string Squash(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c != '_' && c != '-') out.push_back(static_cast<char>(std::tolower(c)));
  }
  return out;
}

void CheckK(Family family, int k) {
  if (k < MinimumK(family) || k > kMaxK) {
    throw Error(ErrorCode::kInvalidFamily, std::string(FamilyName(family)) + " needs k in [" +
                                               std::to_string(MinimumK(family)) + ", " +
                                               std::to_string(kMaxK) + "], got " +
                                               std::to_string(k));
  }
}

int Log2Exact(int n) {
  int k = 0;
  while ((1 << k) < n) ++k;
  if ((1 << k) != n) throw Error(ErrorCode::kInvalidFamily, "n must be a power of two");
  return k;
}

// Incremental POSG construction. States are numbered in creation order.
class Builder {
 public:
  Builder(std::string name, int actions, bool zero_sum) {
    spec_.name = std::move(name);
    spec_.num_actions = {actions, actions};
    spec_.zero_sum = zero_sum;
  }

  StateId Inner(ObsId o1, ObsId o2) {
    StateId s = spec_.num_states++;
    spec_.observations[s] = {o1, o2};
    return s;
  }
  StateId Inner(ObsId o) { return Inner(o, o); }
  StateId Terminal(Rational r1, Rational r2) {
    StateId s = spec_.num_states++;
    spec_.rewards[s] = {std::move(r1), std::move(r2)};
    return s;
  }
  StateId Terminal(const Rational& r1) { return Terminal(r1, -r1); }

  void Move(StateId s, Action a1, Action a2, std::vector<Outcome> outcomes) {
    spec_.transitions.push_back({s, a1, a2, std::move(outcomes)});
  }
  void Move(StateId s, Action a1, Action a2, StateId next) {
    Move(s, a1, a2, {{next, Rational(1)}});
  }
  void Start(StateId s, Rational p) { spec_.start.push_back({s, std::move(p)}); }
  void Meta(const std::string& key, const std::string& value) { spec_.metadata[key] = value; }

  Posg Finish(Family family, int k) {
    Meta("family", std::string(FamilyName(family)));
    Meta("k", std::to_string(k));
    return Posg::Build(std::move(spec_));
  }

 private:
  PosgSpec spec_;
};

int Bit(PolicyIndex x, int k, int i) {  // bit i in 1..k, most significant first
  return static_cast<int>((x >> (k - i)) & 1);
}

// ---- incrementing game -------------------------------------------------

struct Run {
  int bit = 0;
  int length = 1;
};

Run RunOfAction(Action a) { return {a % 2, a / 2 + 1}; }
Action ActionOfRun(Run r) { return 2 * (r.length - 1) + r.bit; }

Run TrailingRun(PolicyIndex x, int k) {
  Run r{Bit(x, k, k), 0};
  while (r.length < k && Bit(x, k, k - r.length) == r.bit) ++r.length;
  if (r.length == 0) r.length = 1;
  return r;
}

enum class RootCase { kEscape, kSameRun, kOppositeRuns, kShortIncrements, kLongIncrements };

// What the root pair leads to. For the asymmetric cases `long_player` is the
// player with the run longer than one.
struct RootOutcome {
  RootCase kind = RootCase::kEscape;
  int length = 0;        // common run length, or the long run's length
  int long_player = 0;   // 0 or 1
  int zero_player = 0;   // kOppositeRuns: player whose run is 0^l
  int lo = 1;            // bit-index range [lo, hi], empty when lo > hi
  int hi = 0;
};

RootOutcome ClassifyRoot(int k, Run r1, Run r2) {
  RootOutcome out;
  if (r1.length == r2.length) {
    out.length = r1.length;
    out.hi = k - r1.length - 1;
    if (r1.bit == r2.bit) {
      out.kind = RootCase::kSameRun;
    } else {
      out.kind = RootCase::kOppositeRuns;
      out.zero_player = r1.bit == 0 ? 0 : 1;
    }
    return out;
  }
  if (r1.bit == r2.bit || (r1.length != 1 && r2.length != 1)) return out;
  out.long_player = r1.length > 1 ? 0 : 1;
  const Run& lng = out.long_player == 0 ? r1 : r2;
  out.length = lng.length;
  out.kind = lng.bit == 0 ? RootCase::kShortIncrements : RootCase::kLongIncrements;
  out.hi = k - 2;
  return out;
}

// Payoff pair as [player 0, player 1].
using Pay = std::array<Rational, 2>;

Pay Increment(int k, int incrementer) {
  Pay p{Rational(-1), Rational(-1)};
  p[incrementer] = Rational(1, 2 * k);
  return p;
}

// Payoff when the bit-index range is empty.
Pay RootPayoff(int k, const RootOutcome& o) {
  switch (o.kind) {
    case RootCase::kEscape:
      return {Rational(-2), Rational(-2)};
    case RootCase::kSameRun:
      return {Rational(0), Rational(0)};
    case RootCase::kOppositeRuns:
      // 0^k against 1^k is not an increment in either direction.
      if (o.length == k) return {Rational(-1), Rational(-1)};
      return Increment(k, o.zero_player);
    case RootCase::kShortIncrements:
      return Increment(k, 1 - o.long_player);
    case RootCase::kLongIncrements:
      return Increment(k, o.long_player);
  }
  return {};
}

// Payoff after bit index i was disclosed and the players answered y.
Pay LeafPayoff(int k, const RootOutcome& o, int i, std::array<Action, 2> y) {
  if (y[0] > 1 || y[1] > 1) return {Rational(-2), Rational(-2)};
  const bool match = y[0] == y[1];
  switch (o.kind) {
    case RootCase::kEscape:
      break;
    case RootCase::kSameRun:
      return match ? Pay{Rational(0), Rational(0)} : Pay{Rational(-1), Rational(-1)};
    case RootCase::kOppositeRuns:
      return match ? Increment(k, o.zero_player) : Pay{Rational(-1), Rational(-1)};
    case RootCase::kShortIncrements:
    case RootCase::kLongIncrements: {
      const int zero_run_forced = i == k - o.length ? 1 : 0;
      if (i >= k - o.length) {
        const int forced =
            o.kind == RootCase::kShortIncrements ? zero_run_forced : 1 - zero_run_forced;
        if (y[o.long_player] != forced) return {Rational(-2), Rational(-2)};
      }
      const int incrementer =
          o.kind == RootCase::kShortIncrements ? 1 - o.long_player : o.long_player;
      return match ? Increment(k, incrementer) : Pay{Rational(-1), Rational(-1)};
    }
  }
  return {Rational(-2), Rational(-2)};
}

Pay IncrementingEntry(int k, PolicyIndex a, PolicyIndex b) {
  RootOutcome o = ClassifyRoot(k, TrailingRun(a, k), TrailingRun(b, k));
  if (o.kind == RootCase::kEscape || o.lo > o.hi) return RootPayoff(k, o);
  Pay total{Rational(0), Rational(0)};
  const int count = o.hi - o.lo + 1;
  for (int i = o.lo; i <= o.hi; ++i) {
    Pay p = LeafPayoff(k, o, i, {Bit(a, k, i), Bit(b, k, i)});
    total[0] += p[0];
    total[1] += p[1];
  }
  total[0] /= count;
  total[1] /= count;
  return total;
}

PolicyIndex Power(PolicyIndex base, int exp) {
  PolicyIndex out = 1;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

}  // namespace

std::string_view FamilyName(Family family) {
  for (const auto& [f, name] : kFamilyNames) {
    if (f == family) return name;
  }
  return "?";
}

std::optional<Family> ParseFamily(std::string_view name) {
  const std::string wanted = Squash(name);
  for (const auto& [f, n] : kFamilyNames) {
    if (Squash(n) == wanted) return f;
  }
  return std::nullopt;
}

int MinimumK(Family family) {
  switch (family) {
    case Family::kIncrementing:
    case Family::kMatchingPenniesChain:
      return 2;
    default:
      return 1;
  }
}

Posg GuessTheString(int k) {
  CheckK(Family::kGuessTheString, k);
  Builder b("guess_the_string(" + std::to_string(k) + ")", 2, true);
  std::vector<StateId> chain;
  for (int j = 0; j < k; ++j) chain.push_back(b.Inner(j));
  for (int j = 0; j < k; ++j) {
    StateId mismatch = b.Terminal(Rational(1));
    StateId next = j + 1 < k ? chain[j + 1] : b.Terminal(Rational(-1));
    for (Action a1 : {0, 1}) {
      for (Action a2 : {0, 1}) b.Move(chain[j], a1, a2, a1 == a2 ? next : mismatch);
    }
  }
  b.Start(chain[0], 1);
  return b.Finish(Family::kGuessTheString, k);
}

NormalFormGame GuessTheStringMatrix(int n) {
  Matrix m(n, n);
  for (int a = 0; a < n; ++a) {
    for (int c = 0; c < n; ++c) m(a, c) = a == c ? -1 : 1;
  }
  return NormalFormGame::ZeroSum(std::move(m));
}

Posg BiggerNumber(int k) {
  CheckK(Family::kBiggerNumber, k);
  Builder b("bigger_number(" + std::to_string(k) + ")", 2, true);
  // center[j]: equal after j bits; upper[j]/lower[j]: player 1 ahead/behind
  // by exactly one after j bits.
  std::vector<StateId> center, upper(k, -1), lower(k, -1);
  for (int j = 0; j < k; ++j) center.push_back(b.Inner(0));
  for (int j = 1; j < k; ++j) upper[j] = b.Inner(0);
  for (int j = 1; j < k; ++j) lower[j] = b.Inner(0);
  StateId tie = b.Terminal(Rational(0));
  StateId plus2 = b.Terminal(Rational(2));
  StateId minus2 = b.Terminal(Rational(-2));
  for (int j = 0; j < k; ++j) {
    const bool last = j + 1 == k;
    b.Move(center[j], 0, 0, last ? tie : center[j + 1]);
    b.Move(center[j], 1, 1, last ? tie : center[j + 1]);
    b.Move(center[j], 1, 0, last ? plus2 : upper[j + 1]);
    b.Move(center[j], 0, 1, last ? minus2 : lower[j + 1]);
  }
  for (int j = 1; j < k; ++j) {
    const bool last = j + 1 == k;
    StateId up_win = b.Terminal(Rational(1));
    b.Move(upper[j], 0, 1, last ? plus2 : upper[j + 1]);
    b.Move(upper[j], 0, 0, up_win);
    b.Move(upper[j], 1, 0, up_win);
    b.Move(upper[j], 1, 1, up_win);
    StateId down_win = b.Terminal(Rational(-1));
    b.Move(lower[j], 1, 0, last ? minus2 : lower[j + 1]);
    b.Move(lower[j], 0, 0, down_win);
    b.Move(lower[j], 0, 1, down_win);
    b.Move(lower[j], 1, 1, down_win);
  }
  b.Start(center[0], 1);
  return b.Finish(Family::kBiggerNumber, k);
}

NormalFormGame BiggerNumberMatrix(int n) {
  Matrix m(n, n);
  for (int a = 0; a < n; ++a) {
    for (int c = 0; c < n; ++c) {
      const int d = a - c;
      const int mag = std::abs(d) == 1 ? 2 : 1;
      m(a, c) = d == 0 ? 0 : (d > 0 ? mag : -mag);
    }
  }
  return NormalFormGame::ZeroSum(std::move(m));
}

Posg WeakBiggerNumber(int k) {
  CheckK(Family::kWeakBiggerNumber, k);
  Builder b("weak_bigger_number(" + std::to_string(k) + ")", 2, true);
  std::vector<StateId> chain;
  for (int j = 0; j < k; ++j) chain.push_back(b.Inner(j));
  for (int j = 0; j < k; ++j) {
    StateId next = j + 1 < k ? chain[j + 1] : b.Terminal(Rational(0));
    b.Move(chain[j], 0, 0, next);
    b.Move(chain[j], 1, 1, next);
    b.Move(chain[j], 1, 0, b.Terminal(Rational(1)));
    b.Move(chain[j], 0, 1, b.Terminal(Rational(-1)));
  }
  b.Start(chain[0], 1);
  return b.Finish(Family::kWeakBiggerNumber, k);
}

NormalFormGame WeakBiggerNumberMatrix(int n) {
  Matrix m(n, n);
  for (int a = 0; a < n; ++a) {
    for (int c = 0; c < n; ++c) m(a, c) = a == c ? 0 : (a > c ? 1 : -1);
  }
  return NormalFormGame::ZeroSum(std::move(m));
}

Posg Incrementing(int k) {
  CheckK(Family::kIncrementing, k);
  const int actions = 2 * k;
  Builder b("incrementing(" + std::to_string(k) + ")", actions, false);
  StateId root = b.Inner(0);
  b.Start(root, 1);
  for (Action x1 = 0; x1 < actions; ++x1) {
    for (Action x2 = 0; x2 < actions; ++x2) {
      RootOutcome o = ClassifyRoot(k, RunOfAction(x1), RunOfAction(x2));
      if (o.kind == RootCase::kEscape || o.lo > o.hi) {
        Pay p = RootPayoff(k, o);
        b.Move(root, x1, x2, b.Terminal(p[0], p[1]));
        continue;
      }
      const Rational prob(1, o.hi - o.lo + 1);
      std::vector<Outcome> draws;
      for (int i = o.lo; i <= o.hi; ++i) {
        StateId chance = b.Inner(i);
        draws.push_back({chance, prob});
        for (Action y1 = 0; y1 < actions; ++y1) {
          for (Action y2 = 0; y2 < actions; ++y2) {
            Pay p = LeafPayoff(k, o, i, {y1, y2});
            b.Move(chance, y1, y2, b.Terminal(p[0], p[1]));
          }
        }
      }
      b.Move(root, x1, x2, std::move(draws));
    }
  }
  b.Meta("opposite_full_runs", "-1,-1");
  return b.Finish(Family::kIncrementing, k);
}

NormalFormGame IncrementingMatrix(int n) {
  const int k = Log2Exact(n);
  if (k < 2) throw Error(ErrorCode::kInvalidFamily, "incrementing matrix needs n >= 4");
  Matrix m1(n, n);
  Matrix m2(n, n);
  for (int a = 0; a < n; ++a) {
    for (int c = 0; c < n; ++c) {
      Pay p = IncrementingEntry(k, a, c);
      m1(a, c) = p[0];
      m2(a, c) = p[1];
    }
  }
  return NormalFormGame::General(std::move(m1), std::move(m2));
}

Posg MatchingPenniesChain(int k) {
  CheckK(Family::kMatchingPenniesChain, k);
  Builder b("matching_pennies_chain(" + std::to_string(k) + ")", 2, true);
  std::vector<StateId> states;
  for (int j = 0; j < k; ++j) states.push_back(b.Inner(j));
  for (int j = 0; j < k; ++j) {
    for (Action a1 : {0, 1}) {
      for (Action a2 : {0, 1}) {
        const bool p1_wins = j == 0 ? a1 == a2 : !(a1 == 0 && a2 == 1);
        b.Move(states[j], a1, a2, b.Terminal(Rational(p1_wins ? 1 : -1)));
      }
    }
    b.Start(states[j], Rational(1, k));
  }
  return b.Finish(Family::kMatchingPenniesChain, k);
}

NormalFormGame MatchingPenniesChainMatrix(int k) {
  const int n = 1 << k;
  Matrix m(n, n);
  for (int a = 0; a < n; ++a) {
    for (int c = 0; c < n; ++c) {
      Rational total = 0;
      for (int i = 1; i <= k; ++i) {
        const int x = Bit(a, k, i);
        const int y = Bit(c, k, i);
        const bool p1_wins = i == 1 ? x == y : !(x == 0 && y == 1);
        total += p1_wins ? 1 : -1;
      }
      m(a, c) = total / k;
    }
  }
  return NormalFormGame::ZeroSum(std::move(m));
}

Posg Generate(Family family, int k) {
  switch (family) {
    case Family::kGuessTheString:
      return GuessTheString(k);
    case Family::kBiggerNumber:
      return BiggerNumber(k);
    case Family::kWeakBiggerNumber:
      return WeakBiggerNumber(k);
    case Family::kIncrementing:
      return Incrementing(k);
    case Family::kMatchingPenniesChain:
      return MatchingPenniesChain(k);
  }
  throw Error(ErrorCode::kInvalidFamily, "unknown family");
}

NormalFormGame FamilyMatrix(Family family, int k) {
  CheckK(family, k);
  if (k > 12) throw Error(ErrorCode::kEnumerationCapExceeded, "matrix too large");
  const int n = 1 << k;
  NormalFormGame nfg;
  switch (family) {
    case Family::kGuessTheString:
      nfg = GuessTheStringMatrix(n);
      break;
    case Family::kBiggerNumber:
      nfg = BiggerNumberMatrix(n);
      break;
    case Family::kWeakBiggerNumber:
      nfg = WeakBiggerNumberMatrix(n);
      break;
    case Family::kIncrementing:
      nfg = IncrementingMatrix(n);
      break;
    case Family::kMatchingPenniesChain:
      nfg = MatchingPenniesChainMatrix(k);
      break;
  }
  return nfg;
}

PolicyIndex EncodingSize(int k) { return PolicyIndex{1} << k; }

PurePolicy EncodePolicy(Family family, int k, Player player, PolicyIndex x) {
  CheckK(family, k);
  if (x >= EncodingSize(k)) {
    throw Error(ErrorCode::kIndexOutOfRange,
                std::to_string(x) + " needs more than " + std::to_string(k) + " bits");
  }
  PurePolicy policy{player, {}};
  if (family == Family::kIncrementing) {
    policy.actions.push_back(ActionOfRun(TrailingRun(x, k)));
    for (int i = 1; i <= k - 2; ++i) policy.actions.push_back(Bit(x, k, i));
    return policy;
  }
  for (int i = 1; i <= k; ++i) policy.actions.push_back(Bit(x, k, i));
  return policy;
}

PolicyIndex DecodePolicy(Family family, int k, const PurePolicy& policy) {
  CheckK(family, k);
  auto reject = [&]() -> PolicyIndex {
    throw Error(ErrorCode::kIndexOutOfRange, "policy is not a bit-string strategy");
  };
  PolicyIndex x = 0;
  if (family == Family::kIncrementing) {
    if (static_cast<int>(policy.actions.size()) != k - 1) return reject();
    if (policy.actions[0] < 0 || policy.actions[0] >= 2 * k) return reject();
    Run run = RunOfAction(policy.actions[0]);
    for (int i = 1; i <= k; ++i) {
      int bit;
      if (i > k - run.length) {
        bit = run.bit;
      } else if (i == k - run.length) {
        bit = 1 - run.bit;
      } else {
        bit = policy.actions[i];
        if (bit != 0 && bit != 1) return reject();
      }
      x = 2 * x + bit;
    }
    if (EncodePolicy(family, k, policy.player, x) != policy) return reject();
    return x;
  }
  if (static_cast<int>(policy.actions.size()) != k) return reject();
  for (Action a : policy.actions) {
    if (a != 0 && a != 1) return reject();
    x = 2 * x + a;
  }
  return x;
}

PolicyIndex EncodeIndex(Family family, int k, Player player, PolicyIndex x) {
  PurePolicy policy = EncodePolicy(family, k, player, x);
  const PolicyIndex radix = family == Family::kIncrementing ? 2 * k : 2;
  PolicyIndex index = 0;
  for (Action a : policy.actions) index = index * radix + a;
  return index;
}

std::optional<PolicyIndex> DecodeIndex(Family family, int k, Player player,
                                       PolicyIndex index) {
  const PolicyIndex radix = family == Family::kIncrementing ? 2 * k : 2;
  const int length = family == Family::kIncrementing ? k - 1 : k;
  if (index >= Power(radix, length)) return std::nullopt;
  PurePolicy policy{player, std::vector<Action>(length, 0)};
  for (int i = length - 1; i >= 0; --i) {
    policy.actions[i] = static_cast<Action>(index % radix);
    index /= radix;
  }
  try {
    return DecodePolicy(family, k, policy);
  } catch (const Error&) {
    return std::nullopt;
  }
}

StructureCounts ExpectedStructure(Family family, int k) {
  CheckK(family, k);
  switch (family) {
    case Family::kGuessTheString:
      return {2 * k + 1, k + 1, k, k};
    case Family::kBiggerNumber:
      return {5 * k - 1, 2 * k + 1, k, k};
    case Family::kWeakBiggerNumber:
      return {3 * k + 1, 2 * k + 1, k, k};
    case Family::kMatchingPenniesChain:
      return {5 * k, 4 * k, k, k};
    case Family::kIncrementing: {
      const int chance = 6 * (k - 1) * (k - 2);
      const int leaves_per_chance = 4 * k * k;
      const int root_terminals = 4 * k * k - 4 * (k - 2) - (k >= 3 ? 4 * (k - 1) : 0);
      return {1 + chance * (1 + leaves_per_chance) + root_terminals,
              chance * leaves_per_chance + root_terminals, k - 1, k - 1};
    }
  }
  return {};
}

std::string_view TheoremName(Theorem theorem) {
  for (const auto& [t, name] : kTheoremNames) {
    if (t == theorem) return name;
  }
  return "?";
}

std::optional<Theorem> ParseTheorem(std::string_view name) {
  for (const auto& [t, n] : kTheoremNames) {
    if (n == name) return t;
  }
  return std::nullopt;
}

Family TheoremFamily(Theorem theorem) {
  switch (theorem) {
    case Theorem::kT1:
      return Family::kGuessTheString;
    case Theorem::kT2:
      return Family::kBiggerNumber;
    case Theorem::kT3:
      return Family::kWeakBiggerNumber;
    case Theorem::kT4:
      return Family::kIncrementing;
    case Theorem::kT5:
      return Family::kMatchingPenniesChain;
  }
  return Family::kGuessTheString;
}

std::shared_ptr<const Schedule> ScheduleForTheorem(Theorem theorem, int k) {
  const Family family = TheoremFamily(theorem);
  CheckK(family, k);
  const PolicyIndex n = EncodingSize(k);
  auto enc = [family, k](Player p, PolicyIndex x) { return EncodeIndex(family, k, p, x); };
  auto schedule = std::make_shared<Schedule>();
  switch (theorem) {
    case Theorem::kT3:
      schedule->name = "T3";
      schedule->length = static_cast<int>(n);
      schedule->response = [=](int, Player p, const IndexMixture& opp)
          -> std::optional<PolicyIndex> {
        PolicyIndex top = 0;
        for (const auto& [index, w] : opp) {
          auto x = DecodeIndex(family, k, Opponent(p), index);
          if (!x.has_value()) return std::nullopt;
          top = std::max(top, *x);
        }
        return enc(p, std::min(top + 1, n - 1));
      };
      break;
    case Theorem::kT4:
      schedule->name = "T4";
      schedule->length = static_cast<int>(n);
      schedule->meta_nash = [=](int t) -> std::optional<ScriptedProfile> {
        const PolicyIndex x = static_cast<PolicyIndex>(t - 1);
        return ScriptedProfile{PureMixture(enc(Player::kOne, x)),
                               PureMixture(enc(Player::kTwo, x))};
      };
      schedule->response = [=](int t, Player p, const IndexMixture&)
          -> std::optional<PolicyIndex> {
        return enc(p, std::min(static_cast<PolicyIndex>(t), n - 1));
      };
      break;
    case Theorem::kT5: {
      const PolicyIndex half = n / 2;
      schedule->name = "T5";
      schedule->length = static_cast<int>(half);
      schedule->meta_nash = [=](int t) -> std::optional<ScriptedProfile> {
        return ScriptedProfile{PureMixture(enc(Player::kOne, n - 1)),
                               PureMixture(enc(Player::kTwo, t - 1))};
      };
      schedule->response = [=](int t, Player p, const IndexMixture&)
          -> std::optional<PolicyIndex> {
        const PolicyIndex x = static_cast<PolicyIndex>(t);
        if (p == Player::kOne) return enc(p, x - 1);
        // encode(2^(k-1)) loses the pennies state, so the last scripted
        // iteration repeats the largest winning policy.
        return enc(p, std::min(x, half - 1));
      };
      break;
    }
    case Theorem::kT1:
    case Theorem::kT2:
      return nullptr;
  }
  return schedule;
}

std::pair<PolicyIndex, PolicyIndex> InitForTheorem(Theorem theorem, int k) {
  const Family family = TheoremFamily(theorem);
  const PolicyIndex first = theorem == Theorem::kT5 ? EncodingSize(k) - 1 : 0;
  return {EncodeIndex(family, k, Player::kOne, first), EncodeIndex(family, k, Player::kTwo, 0)};
}

TiebreakPolicy TiebreakForTheorem(Theorem theorem, int k) {
  TiebreakPolicy tb;
  tb.init = InitForTheorem(theorem, k);
  tb.schedule = ScheduleForTheorem(theorem, k);
  switch (theorem) {
    case Theorem::kT1:
      tb.meta_nash = MetaNashMode::kLexicographic;
      tb.best_response = ResponseMode::kLexicographic;
      break;
    case Theorem::kT2:
      tb.meta_nash = MetaNashMode::kUniqueOrFail;
      tb.best_response = ResponseMode::kUniqueOrFail;
      break;
    case Theorem::kT3:
      tb.meta_nash = MetaNashMode::kUniqueOrFail;
      tb.best_response = ResponseMode::kScripted;
      break;
    case Theorem::kT4:
    case Theorem::kT5:
      tb.meta_nash = MetaNashMode::kScripted;
      tb.best_response = ResponseMode::kScripted;
      break;
  }
  return tb;
}

}  // namespace dolab
