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

#include "dolab/theorems.h"

#include <algorithm>
#include <set>

#include "dolab/equilibrium.h"
#include "dolab/errors.h"
#include "dolab/game_oracle.h"
#include "dolab/normal_form.h"

namespace dolab {
namespace {

PolicyIndex Pow2(int k) { return PolicyIndex{1} << k; }

class Checker {
 public:
  explicit Checker(TheoremVerdict& v) : v_(v) {}

  // Records the predicate and returns whether checking should continue.
  bool Check(const std::string& name, bool holds, const std::string& detail = "") {
    if (!ok()) return false;
    if (holds) {
      if (std::find(v_.checks.begin(), v_.checks.end(), name) == v_.checks.end()) {
        v_.checks.push_back(name);
      }
      return true;
    }
    v_.status = VerdictStatus::kPredicateFailure;
    v_.failure = detail.empty() ? name : name + ": " + detail;
    return false;
  }

  bool ok() const { return v_.status == VerdictStatus::kPass; }

 private:
  TheoremVerdict& v_;
};

PolicyIndex Largest(const IterationRecord& rec) {
  PolicyIndex top = 0;
  for (PolicyIndex i : rec.set1) top = std::max(top, i);
  for (PolicyIndex i : rec.set2) top = std::max(top, i);
  return top;
}

std::string At(int t) { return "iteration " + std::to_string(t); }

void CheckGuessTheString(const Posg& g, int k, TheoremVerdict& v, Checker& c) {
  const RunTrace& trace = v.trace;
  const PolicyIndex full = Pow2(k);
  if (!c.Check("converged", trace.outcome == RunOutcome::kConverged, trace.message)) return;
  c.Check("iterations-at-least-2^k-1",
          trace.iteration_count >= static_cast<int>(full) - 1,
          std::to_string(trace.iteration_count));
  for (const IterationRecord& rec : trace.iterations) {
    if (rec.gap == 0 && (rec.set1.size() != full || rec.set2.size() != full)) {
      c.Check("zero-gap-needs-full-sets", false, At(rec.t));
      return;
    }
  }
  c.Check("zero-gap-needs-full-sets", true);
  for (int t = 1; 2 * t < static_cast<int>(trace.iterations.size()); ++t) {
    const IterationRecord& rec = trace.iterations[2 * t];
    if (rec.gap > MakeRational(2, t)) {
      c.Check("gap-after-2t-at-most-2/t", false,
              At(rec.t) + " gap " + FormatRational(rec.gap));
      return;
    }
  }
  c.Check("gap-after-2t-at-most-2/t", true);
  if (k <= 3) {
    NormalFormGame nfg = InducedNormalForm(g);
    const int n = static_cast<int>(full);
    c.Check("full-support-equilibria",
            MinimumOptimalSupport(nfg, Player::kOne) == n &&
                MinimumOptimalSupport(nfg, Player::kTwo) == n);
  }
}

void CheckBiggerNumber(int k, TheoremVerdict& v, Checker& c) {
  const RunTrace& trace = v.trace;
  if (!c.Check("converged", trace.outcome == RunOutcome::kConverged, trace.message)) return;
  for (const IterationRecord& rec : trace.iterations) {
    if (rec.br_count1 != 1 || rec.br_count2 != 1) {
      c.Check("unique-best-responses", false, At(rec.t));
      return;
    }
  }
  c.Check("unique-best-responses", true);
  for (const IterationRecord& rec : trace.iterations) {
    if (rec.meta_cert.rfind("unique:", 0) != 0) {
      c.Check("unique-meta-nash", false, At(rec.t) + " " + rec.meta_cert);
      return;
    }
  }
  c.Check("unique-meta-nash", true);
  for (std::size_t i = 1; i < trace.iterations.size(); ++i) {
    if (Largest(trace.iterations[i]) > Largest(trace.iterations[i - 1]) + 1) {
      c.Check("largest-policy-grows-by-at-most-one", false, At(trace.iterations[i].t));
      return;
    }
  }
  c.Check("largest-policy-grows-by-at-most-one", true);
  c.Check("iterations-equal-2^k-1", trace.iteration_count == static_cast<int>(Pow2(k)) - 1,
          std::to_string(trace.iteration_count));
}

bool AllScripted(const RunTrace& trace, bool meta) {
  for (const IterationRecord& rec : trace.iterations) {
    if (rec.br_cert1 != "scripted:certified" || rec.br_cert2 != "scripted:certified") {
      return false;
    }
    if (meta && rec.meta_cert != "scripted:certified") return false;
  }
  return true;
}

void CheckWeakBiggerNumber(int k, TheoremVerdict& v, Checker& c) {
  const RunTrace& trace = v.trace;
  if (!c.Check("converged", trace.outcome == RunOutcome::kConverged, trace.message)) return;
  c.Check("responses-certified", AllScripted(trace, false));
  c.Check("iterations-equal-2^k-1", trace.iteration_count == static_cast<int>(Pow2(k)) - 1,
          std::to_string(trace.iteration_count));
}

void CheckIncrementing(const Posg& g, int k, TheoremVerdict& v, Checker& c) {
  const Family family = Family::kIncrementing;
  const PolicyIndex n = Pow2(k);
  if (k <= 3) {
    NormalFormGame nfg = InducedNormalForm(g);
    ReducedGame reduced = ReduceDominated(nfg, Dominance::kWeakPure);
    bool sizes = reduced.rows.size() == n && reduced.cols.size() == n;
    if (!c.Check("reduced-to-2^k-strategies", sizes,
                 std::to_string(reduced.rows.size()) + "x" +
                     std::to_string(reduced.cols.size()))) {
      return;
    }
    std::vector<int> rows;
    std::vector<int> cols;
    for (PolicyIndex x = 0; x < n; ++x) {
      rows.push_back(static_cast<int>(EncodeIndex(family, k, Player::kOne, x)));
      cols.push_back(static_cast<int>(EncodeIndex(family, k, Player::kTwo, x)));
    }
    std::vector<int> sorted_rows = rows;
    std::vector<int> sorted_cols = cols;
    std::sort(sorted_rows.begin(), sorted_rows.end());
    std::sort(sorted_cols.begin(), sorted_cols.end());
    if (!c.Check("survivors-are-encoded-policies",
                 reduced.rows == sorted_rows && reduced.cols == sorted_cols)) {
      return;
    }
    NormalFormGame expected = IncrementingMatrix(static_cast<int>(n));
    NormalFormGame actual = nfg.Restricted(rows, cols);
    if (!c.Check("reduced-game-matches-matrix", actual.payoff1 == expected.payoff1 &&
                                                    actual.payoff2 == expected.payoff2)) {
      return;
    }
    const Rational bonus(1, 2 * k);
    bool diagonal = true;
    for (int a = 0; a + 1 < static_cast<int>(n); ++a) {
      diagonal = diagonal && actual.payoff1(a, a) == 0 && actual.payoff2(a, a) == 0 &&
                 actual.payoff1(a + 1, a) == bonus && actual.payoff2(a + 1, a) == -1;
    }
    if (!c.Check("increment-payoffs", diagonal)) return;
  }
  NormalFormGame matrix = IncrementingMatrix(static_cast<int>(n));
  PosgOracle oracle(g);
  for (int t = 0; t + 1 < static_cast<int>(n); ++t) {
    bool nash = true;
    for (int d = 0; d <= t; ++d) {
      nash = nash && matrix.payoff1(d, t) <= matrix.payoff1(t, t) &&
             matrix.payoff2(t, d) <= matrix.payoff2(t, t);
    }
    if (!c.Check("diagonal-restricted-equilibria", nash, "t=" + std::to_string(t))) return;
    for (Player p : {Player::kOne, Player::kTwo}) {
      IndexMixture opp = PureMixture(EncodeIndex(family, k, Opponent(p), t));
      PolicyIndex next = EncodeIndex(family, k, p, t + 1);
      Rational best =
          oracle.BestResponse(p, opp, ResponseSelect::kLexicographic, nullptr, nullptr).value;
      if (!c.Check("next-policy-best-responds", oracle.ValueAgainst(p, next, opp) == best,
                   std::string(PlayerName(p)) + " t=" + std::to_string(t))) {
        return;
      }
    }
  }
  const RunTrace& trace = v.trace;
  if (!c.Check("converged", trace.outcome == RunOutcome::kConverged, trace.message)) return;
  c.Check("choices-certified", AllScripted(trace, true));
  c.Check("iterations-equal-2^k-1", trace.iteration_count == static_cast<int>(n) - 1,
          std::to_string(trace.iteration_count));
}

void CheckMatchingPenniesChain(const Posg& g, int k, TheoremVerdict& v, Checker& c) {
  const RunTrace& trace = v.trace;
  const int half = static_cast<int>(Pow2(k - 1));
  const PolicyIndex top = Pow2(k) - 1;
  if (!c.Check("run-lasts-2^(k-1)-iterations",
               static_cast<int>(trace.iterations.size()) >= half,
               std::to_string(trace.iterations.size()) + " records")) {
    return;
  }
  for (int t = 1; t <= half; ++t) {
    const IterationRecord& rec = trace.iterations[t - 1];
    std::vector<PolicyIndex> set1;
    std::vector<PolicyIndex> set2;
    for (int i = 0; i + 2 <= t; ++i) set1.push_back(i);
    set1.push_back(top);
    for (int i = 0; i < t; ++i) set2.push_back(i);
    if (!c.Check("policy-sets", rec.set1 == set1 && rec.set2 == set2, At(t))) return;
    if (!c.Check("meta-nash-certified", rec.meta_cert == "scripted:certified", At(t))) return;
    if (!c.Check("responses-certified",
                 rec.br_cert1 == "scripted:certified" && rec.br_cert2 == "scripted:certified",
                 At(t))) {
      return;
    }
    if (!c.Check("gap-equals-2/k", rec.gap == MakeRational(2, k),
                 At(t) + " gap " + FormatRational(rec.gap))) {
      return;
    }
  }
  if (k <= 6) {
    NormalFormGame nfg = InducedNormalForm(g);
    Rational value = SolveZeroSum(nfg).value1;
    if (!c.Check("value-equals-1-1/k", value == 1 - Rational(1, k), FormatRational(value))) {
      return;
    }
    IndexMixture mix{{Pow2(k - 1) - 1, Rational(1, 2)}, {top, Rational(1, 2)}};
    EquilibriumCertificate cert = VerifyEquilibrium(PosgOracle(g), mix, mix, 0);
    c.Check("two-policy-equilibrium", cert.passed,
            "improvements " + FormatRational(cert.impr1) + ", " + FormatRational(cert.impr2));
  }
}

}  // namespace

Rational EpsForTheorem(Theorem theorem, int k) {
  switch (theorem) {
    case Theorem::kT1:
    case Theorem::kT2:
      return 0;
    case Theorem::kT3:
      return 1;
    case Theorem::kT4:
      return Rational(1, 2 * k);
    case Theorem::kT5:
      return Rational(1, k);
  }
  return 0;
}

int MaxTheoremK(Theorem theorem) {
  switch (theorem) {
    case Theorem::kT4:
      return 4;
    case Theorem::kT5:
      return 8;
    default:
      return 10;
  }
}

Json TheoremVerdict::ToJson() const {
  Json j;
  j["theorem"] = TheoremName(theorem);
  j["k"] = k;
  j["verdict"] = status == VerdictStatus::kPass               ? "pass"
                 : status == VerdictStatus::kLegalityFailure ? "illegal"
                                                              : "fail";
  j["failure"] = failure.empty() ? Json(nullptr) : Json(failure);
  j["checks"] = checks;
  j["outcome"] = RunOutcomeName(trace.outcome);
  j["iterations"] = trace.iteration_count;
  j["eps"] = FormatRational(trace.eps);
  return j;
}

TheoremVerdict VerifyTheorem(Theorem theorem, int k) {
  const Family family = TheoremFamily(theorem);
  if (k < MinimumK(family)) {
    throw Error(ErrorCode::kInvalidFamily, std::string(TheoremName(theorem)) +
                                               " needs k >= " + std::to_string(MinimumK(family)));
  }
  if (k > MaxTheoremK(theorem)) {
    throw Error(ErrorCode::kEnumerationCapExceeded,
                std::string(TheoremName(theorem)) + " is checked up to k = " +
                    std::to_string(MaxTheoremK(theorem)));
  }
  TheoremVerdict v;
  v.theorem = theorem;
  v.k = k;
  Posg g = Generate(family, k);
  PosgOracle oracle(g);
  v.trace = RunDoubleOracle(oracle, EpsForTheorem(theorem, k), TiebreakForTheorem(theorem, k),
                            static_cast<int>(4 * Pow2(k)));
  if (IsLegalityFailure(v.trace.outcome)) {
    v.status = VerdictStatus::kLegalityFailure;
    v.failure = std::string(RunOutcomeName(v.trace.outcome)) + ": " + v.trace.message;
    // The T5 predicates only cover the first 2^(k-1) iterations; a later
    // blocked schedule is not a violation.
    const bool late = theorem == Theorem::kT5 &&
                      static_cast<int>(v.trace.iterations.size()) > static_cast<int>(Pow2(k - 1));
    if (!late) return v;
    v.status = VerdictStatus::kPass;
    v.failure.clear();
  }
  Checker c(v);
  switch (theorem) {
    case Theorem::kT1:
      CheckGuessTheString(g, k, v, c);
      break;
    case Theorem::kT2:
      CheckBiggerNumber(k, v, c);
      break;
    case Theorem::kT3:
      CheckWeakBiggerNumber(k, v, c);
      break;
    case Theorem::kT4:
      CheckIncrementing(g, k, v, c);
      break;
    case Theorem::kT5:
      CheckMatchingPenniesChain(g, k, v, c);
      break;
  }
  return v;
}

}  // namespace dolab
