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

#include "dolab/equilibrium.h"

#include <algorithm>
#include <functional>
#include <string>

#include "dolab/errors.h"
#include "dolab/lp.h"

namespace dolab {
namespace {

void RequireZeroSum(const NormalFormGame& nfg) {
  nfg.Validate();
  if (!nfg.zero_sum) throw Error(ErrorCode::kNotZeroSum, "game is not zero-sum");
}

// Own payoffs with own strategies as rows.
Matrix OwnPayoff(const NormalFormGame& nfg, Player p) {
  return p == Player::kOne ? nfg.payoff1 : nfg.payoff2.Transposed();
}

Rational Dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  Rational out = 0;
  for (std::size_t i = 0; i < a.size(); ++i) out += a[i] * b[i];
  return out;
}

// own[i] = payoff of own pure strategy i against `opp`.
std::vector<Rational> AgainstMixture(const Matrix& own, const std::vector<Rational>& opp) {
  std::vector<Rational> out(own.rows(), Rational(0));
  for (int i = 0; i < own.rows(); ++i) {
    for (int o = 0; o < own.cols(); ++o) {
      if (opp[o] != 0) out[i] += own(i, o) * opp[o];
    }
  }
  return out;
}

// Maximin strategy of the row player of `own`; returns (value, strategy).
std::pair<Rational, std::vector<Rational>> Maximin(const Matrix& own) {
  const int n = own.rows();
  LinearProgram lp;
  lp.num_vars = n + 1;
  lp.objective.assign(n + 1, Rational(0));
  lp.objective[n] = 1;
  lp.free_vars.assign(n + 1, false);
  lp.free_vars[n] = true;
  for (int o = 0; o < own.cols(); ++o) {
    LinearConstraint& c = lp.AddConstraint(Relation::kLessEqual, 0);
    for (int i = 0; i < n; ++i) c.coeffs[i] = -own(i, o);
    c.coeffs[n] = 1;
  }
  LinearConstraint& sum = lp.AddConstraint(Relation::kEqual, 1);
  for (int i = 0; i < n; ++i) sum.coeffs[i] = 1;
  LpResult r = SolveLp(lp);
  if (r.status != LpStatus::kOptimal) {
    throw Error(ErrorCode::kMalformed, "maximin program has no optimum");
  }
  return {r.objective, std::vector<Rational>(r.x.begin(), r.x.begin() + n)};
}

// Optimal face of the row player of `own`: strategies supported on `allowed`
// guaranteeing `value`, with extra equality pins. Optimizes +-x[target].
std::vector<Rational> FaceOptimum(const Matrix& own, const Rational& value,
                                  const std::vector<int>& allowed,
                                  const std::vector<std::pair<int, Rational>>& pinned,
                                  int target, bool maximize) {
  const int n = static_cast<int>(allowed.size());
  LinearProgram lp;
  lp.num_vars = n;
  lp.objective.assign(n, Rational(0));
  for (int v = 0; v < n; ++v) {
    if (allowed[v] == target) lp.objective[v] = maximize ? 1 : -1;
  }
  for (int o = 0; o < own.cols(); ++o) {
    LinearConstraint& c = lp.AddConstraint(Relation::kGreaterEqual, value);
    for (int v = 0; v < n; ++v) c.coeffs[v] = own(allowed[v], o);
  }
  LinearConstraint& sum = lp.AddConstraint(Relation::kEqual, 1);
  for (int v = 0; v < n; ++v) sum.coeffs[v] = 1;
  for (const auto& [index, amount] : pinned) {
    LinearConstraint& pin = lp.AddConstraint(Relation::kEqual, amount);
    for (int v = 0; v < n; ++v) {
      if (allowed[v] == index) pin.coeffs[v] = 1;
    }
  }
  LpResult r = SolveLp(lp);
  if (r.status != LpStatus::kOptimal) {
    throw Error(ErrorCode::kMalformed, "optimal face is empty");
  }
  std::vector<Rational> x(own.rows(), Rational(0));
  for (int v = 0; v < n; ++v) x[allowed[v]] = r.x[v];
  return x;
}

struct ZeroSumSolution {
  Matrix own[2];
  Rational value[2];
  std::vector<Rational> strategy[2];
  std::vector<int> tight[2];  // strategies that can carry weight at optimum
};

ZeroSumSolution SolveBoth(const NormalFormGame& nfg) {
  RequireZeroSum(nfg);
  ZeroSumSolution s;
  for (Player p : {Player::kOne, Player::kTwo}) {
    const int i = Index(p);
    s.own[i] = OwnPayoff(nfg, p);
    std::tie(s.value[i], s.strategy[i]) = Maximin(s.own[i]);
  }
  if (s.value[0] + s.value[1] != 0) {
    throw Error(ErrorCode::kMalformed, "maximin values violate duality");
  }
  for (Player p : {Player::kOne, Player::kTwo}) {
    const int i = Index(p);
    std::vector<Rational> payoff = AgainstMixture(s.own[i], s.strategy[1 - i]);
    for (int k = 0; k < static_cast<int>(payoff.size()); ++k) {
      if (payoff[k] == s.value[i]) s.tight[i].push_back(k);
    }
  }
  return s;
}

EquilibriumResult Finish(const NormalFormGame& nfg, std::vector<Rational> row,
                         std::vector<Rational> col) {
  EquilibriumResult out;
  Improvements impr = MatrixImprovements(nfg, row, col);
  out.value1 = Dot(row, AgainstMixture(nfg.payoff1, col));
  out.value2 = Dot(col, AgainstMixture(nfg.payoff2.Transposed(), row));
  out.improvement1 = impr.impr1;
  out.improvement2 = impr.impr2;
  out.row = std::move(row);
  out.col = std::move(col);
  return out;
}

// A strategy of the column side of `opp_payoff` (opponent strategies as
// rows) supported exactly on `own_support` that makes every opponent
// strategy in `opp_support` an equal best reply. Empty if none exists.
std::vector<Rational> SupportedStrategy(const Matrix& opp_payoff,
                                        const std::vector<int>& opp_support,
                                        const std::vector<int>& own_support) {
  const int n = static_cast<int>(own_support.size());
  const int u = n;
  const int delta = n + 1;
  LinearProgram lp;
  lp.num_vars = n + 2;
  lp.objective.assign(n + 2, Rational(0));
  lp.objective[delta] = 1;
  lp.free_vars.assign(n + 2, false);
  lp.free_vars[u] = true;
  LinearConstraint& sum = lp.AddConstraint(Relation::kEqual, 1);
  for (int v = 0; v < n; ++v) sum.coeffs[v] = 1;
  std::vector<bool> in_support(opp_payoff.rows(), false);
  for (int r : opp_support) in_support[r] = true;
  for (int r = 0; r < opp_payoff.rows(); ++r) {
    LinearConstraint& c =
        lp.AddConstraint(in_support[r] ? Relation::kEqual : Relation::kLessEqual, 0);
    for (int v = 0; v < n; ++v) c.coeffs[v] = opp_payoff(r, own_support[v]);
    c.coeffs[u] = -1;
  }
  for (int v = 0; v < n; ++v) {
    LinearConstraint& c = lp.AddConstraint(Relation::kLessEqual, 0);
    c.coeffs[delta] = 1;
    c.coeffs[v] = -1;
  }
  LpResult r = SolveLp(lp);
  if (r.status != LpStatus::kOptimal || r.objective <= 0) return {};
  std::vector<Rational> x(opp_payoff.cols(), Rational(0));
  for (int v = 0; v < n; ++v) x[own_support[v]] = r.x[v];
  return x;
}

void ForEachSubset(int n, int size, const std::function<bool(const std::vector<int>&)>& f,
                   bool& stop) {
  std::vector<int> subset(size);
  for (int i = 0; i < size; ++i) subset[i] = i;
  while (!stop) {
    if (f(subset)) {
      stop = true;
      return;
    }
    int i = size - 1;
    while (i >= 0 && subset[i] == n - size + i) --i;
    if (i < 0) return;
    ++subset[i];
    for (int j = i + 1; j < size; ++j) subset[j] = subset[j - 1] + 1;
  }
}

// Visits support pairs with sizes accepted by `sizes`, in enumeration order.
// `visit` returns true to stop.
void VisitSupportPairs(const NormalFormGame& nfg, int max_support, std::uint64_t cap,
                       const std::function<bool(int, int)>& sizes,
                       const std::function<bool(const EquilibriumResult&)>& visit) {
  nfg.Validate();
  const int m = nfg.rows();
  const int n = nfg.cols();
  const int s1_max = std::min(max_support, m);
  const int s2_max = std::min(max_support, n);
  std::uint64_t examined = 0;
  const Matrix p2_by_col = nfg.payoff2.Transposed();
  bool stop = false;
  for (int total = 2; total <= s1_max + s2_max && !stop; ++total) {
    for (int a = std::max(1, total - s2_max); a <= std::min(s1_max, total - 1) && !stop;
         ++a) {
      const int b = total - a;
      if (!sizes(a, b)) continue;
      ForEachSubset(m, a, [&](const std::vector<int>& rows) {
        bool inner_stop = false;
        ForEachSubset(n, b, [&](const std::vector<int>& cols) {
          if (++examined > cap) {
            throw Error(ErrorCode::kEnumerationCapExceeded,
                        "more than " + std::to_string(cap) + " support pairs");
          }
          if (a == 1 && b == 1) {
            const int r = rows[0];
            const int c = cols[0];
            for (int i = 0; i < m; ++i) {
              if (nfg.payoff1(i, c) > nfg.payoff1(r, c)) return false;
            }
            for (int j = 0; j < n; ++j) {
              if (nfg.payoff2(r, j) > nfg.payoff2(r, c)) return false;
            }
            std::vector<Rational> x(m, Rational(0));
            std::vector<Rational> y(n, Rational(0));
            x[r] = 1;
            y[c] = 1;
            return visit(Finish(nfg, std::move(x), std::move(y)));
          }
          std::vector<Rational> y = SupportedStrategy(nfg.payoff1, rows, cols);
          if (y.empty()) return false;
          std::vector<Rational> x = SupportedStrategy(p2_by_col, cols, rows);
          if (x.empty()) return false;
          return visit(Finish(nfg, std::move(x), std::move(y)));
        }, inner_stop);
        return inner_stop;
      }, stop);
    }
  }
}

}  // namespace

Improvements MatrixImprovements(const NormalFormGame& nfg, const std::vector<Rational>& row,
                                const std::vector<Rational>& col) {
  if (static_cast<int>(row.size()) != nfg.rows() || static_cast<int>(col.size()) != nfg.cols()) {
    throw Error(ErrorCode::kDomainMismatch, "strategy length does not match the game");
  }
  std::vector<Rational> r = AgainstMixture(nfg.payoff1, col);
  std::vector<Rational> c = AgainstMixture(nfg.payoff2.Transposed(), row);
  Improvements out;
  out.impr1 = *std::max_element(r.begin(), r.end()) - Dot(row, r);
  out.impr2 = *std::max_element(c.begin(), c.end()) - Dot(col, c);
  out.gap = out.impr1 + out.impr2;
  return out;
}

EquilibriumResult SolveZeroSum(const NormalFormGame& nfg) {
  ZeroSumSolution s = SolveBoth(nfg);
  return Finish(nfg, s.strategy[0], s.strategy[1]);
}

EquilibriumResult SolveZeroSumLexicographic(const NormalFormGame& nfg) {
  ZeroSumSolution s = SolveBoth(nfg);
  std::vector<Rational> out[2];
  for (int i = 0; i < 2; ++i) {
    std::vector<std::pair<int, Rational>> pinned;
    Rational fixed = 0;
    std::vector<Rational> x = s.strategy[i];
    for (int target : s.tight[i]) {
      if (fixed == 1) {
        pinned.push_back({target, Rational(0)});
        continue;
      }
      x = FaceOptimum(s.own[i], s.value[i], s.tight[i], pinned, target, true);
      pinned.push_back({target, x[target]});
      fixed += x[target];
    }
    std::vector<Rational> strategy(s.own[i].rows(), Rational(0));
    for (const auto& [index, amount] : pinned) strategy[index] = amount;
    out[i] = std::move(strategy);
  }
  return Finish(nfg, std::move(out[0]), std::move(out[1]));
}

UniquenessCertificate IsUniqueZeroSumEquilibrium(const NormalFormGame& nfg) {
  ZeroSumSolution s = SolveBoth(nfg);
  UniquenessCertificate cert;
  for (Player p : {Player::kOne, Player::kTwo}) {
    const int i = Index(p);
    if (s.tight[i].size() <= 1) continue;
    for (int target : s.tight[i]) {
      for (bool maximize : {true, false}) {
        std::vector<Rational> x =
            FaceOptimum(s.own[i], s.value[i], s.tight[i], {}, target, maximize);
        if (x[target] != s.strategy[i][target]) {
          cert.unique = false;
          cert.witness_player = p;
          cert.witness = std::move(x);
          return cert;
        }
      }
    }
  }
  return cert;
}

std::vector<EquilibriumResult> EnumerateNashBimatrix(const NormalFormGame& nfg,
                                                     int max_support, std::uint64_t cap,
                                                     std::size_t limit) {
  std::vector<EquilibriumResult> out;
  if (limit == 0) return out;
  VisitSupportPairs(
      nfg, max_support, cap, [](int, int) { return true; },
      [&](const EquilibriumResult& e) {
        out.push_back(e);
        return out.size() >= limit;
      });
  return out;
}

std::optional<int> MinimumEquilibriumSupport(const NormalFormGame& nfg, int max_support,
                                             std::uint64_t cap) {
  for (int s = 1; s <= max_support; ++s) {
    bool found = false;
    VisitSupportPairs(
        nfg, s, cap, [s](int a, int b) { return std::max(a, b) == s; },
        [&](const EquilibriumResult&) {
          found = true;
          return true;
        });
    if (found) return s;
  }
  return std::nullopt;
}

int MinimumOptimalSupport(const NormalFormGame& nfg, Player p, std::uint64_t cap) {
  const Rational value = SolveZeroSum(nfg).value1;
  const int n = p == Player::kOne ? nfg.rows() : nfg.cols();
  std::vector<int> all(p == Player::kOne ? nfg.cols() : nfg.rows());
  for (int i = 0; i < static_cast<int>(all.size()); ++i) all[i] = i;
  std::uint64_t solved = 0;
  for (int s = 1; s < n; ++s) {
    std::vector<bool> pick(n, false);
    std::fill(pick.begin(), pick.begin() + s, true);
    do {
      if (++solved > cap) {
        throw Error(ErrorCode::kEnumerationCapExceeded,
                    "more than " + std::to_string(cap) + " restricted games");
      }
      std::vector<int> subset;
      for (int i = 0; i < n; ++i) {
        if (pick[i]) subset.push_back(i);
      }
      NormalFormGame sub = p == Player::kOne ? nfg.Restricted(subset, all)
                                             : nfg.Restricted(all, subset);
      if (SolveZeroSum(sub).value1 == value) return s;
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return n;
}

Improvements NashGap(const GameOracle& oracle, const IndexMixture& m1, const IndexMixture& m2) {
  CheckMixture(m1);
  CheckMixture(m2);
  ValuePair v = oracle.EvaluateMixed(m1, m2);
  Improvements out;
  out.impr1 = oracle.BestResponse(Player::kOne, m2, ResponseSelect::kLexicographic, nullptr,
                                  nullptr).value - v.v1;
  out.impr2 = oracle.BestResponse(Player::kTwo, m1, ResponseSelect::kLexicographic, nullptr,
                                  nullptr).value - v.v2;
  out.gap = out.impr1 + out.impr2;
  return out;
}

namespace {

IndexMixture ToIndexMixture(const Posg& g, const MixedPolicy& m) {
  IndexMixture out;
  for (const auto& [policy, w] : m.support()) out.push_back({CanonicalIndex(g, policy), w});
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

Improvements NashGap(const Posg& g, const MixedPolicy& m1, const MixedPolicy& m2) {
  if (m1.player() != Player::kOne || m2.player() != Player::kTwo) {
    throw Error(ErrorCode::kDomainMismatch, "profile players out of order");
  }
  return NashGap(PosgOracle(g), ToIndexMixture(g, m1), ToIndexMixture(g, m2));
}

Rational ImprovementOver(const GameOracle& oracle, Player p,
                         const std::vector<PolicyIndex>& candidates, const IndexMixture& m1,
                         const IndexMixture& m2) {
  const IndexMixture& opp = p == Player::kOne ? m2 : m1;
  Rational current = oracle.EvaluateMixed(m1, m2)[p];
  Rational best = current;
  for (PolicyIndex c : candidates) best = std::max(best, oracle.ValueAgainst(p, c, opp));
  return best - current;
}

EquilibriumCertificate VerifyEquilibrium(const GameOracle& oracle, const IndexMixture& m1,
                                         const IndexMixture& m2, const Rational& eps) {
  Improvements impr = NashGap(oracle, m1, m2);
  return {impr.impr1 <= eps && impr.impr2 <= eps, impr.impr1, impr.impr2};
}

EquilibriumCertificate VerifyEquilibrium(const Posg& g, const MixedPolicy& m1,
                                         const MixedPolicy& m2, const Rational& eps) {
  Improvements impr = NashGap(g, m1, m2);
  return {impr.impr1 <= eps && impr.impr2 <= eps, impr.impr1, impr.impr2};
}

}  // namespace dolab
