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

// Acceptance checks. Prints one [PASS]/[FAIL] line per criterion and exits
// nonzero if any criterion fails.

#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dolab/bench.h"
#include "dolab/best_response.h"
#include "dolab/dynamics.h"
#include "dolab/equilibrium.h"
#include "dolab/errors.h"
#include "dolab/families.h"
#include "dolab/game_io.h"
#include "dolab/game_oracle.h"
#include "dolab/posg.h"
#include "dolab/theorems.h"
#include "dolab/trace_io.h"
#include "test_util.h"

namespace dolab {
namespace {

// Collects the first failed expectation of a criterion.
class Check {
 public:
  void Expect(bool ok, const std::string& what) {
    if (!ok && failure_.empty()) failure_ = what;
  }
  bool ok() const { return failure_.empty(); }
  const std::string& failure() const { return failure_; }

 private:
  std::string failure_;
};

std::string Kname(std::string_view what, int k) {
  std::ostringstream os;
  os << what << " k=" << k;
  return os.str();
}

void Theorems(Check& c, Theorem th, int lo, int hi) {
  for (int k = lo; k <= hi; ++k) {
    TheoremVerdict v = VerifyTheorem(th, k);
    c.Expect(v.passed(), Kname(TheoremName(th), k) + ": " + v.failure);
  }
}

void A1(Check& c) {
  for (Family f : {Family::kBiggerNumber, Family::kWeakBiggerNumber}) {
    for (int k = 1; k <= 4; ++k) {
      NormalFormGame induced = InducedNormalForm(Generate(f, k));
      NormalFormGame matrix = FamilyMatrix(f, k);
      std::vector<int> rows;
      std::vector<int> cols;
      for (PolicyIndex x = 0; x < EncodingSize(k); ++x) {
        rows.push_back(static_cast<int>(EncodeIndex(f, k, Player::kOne, x)));
        cols.push_back(static_cast<int>(EncodeIndex(f, k, Player::kTwo, x)));
      }
      NormalFormGame encoded = induced.Restricted(rows, cols);
      c.Expect(induced.rows() == matrix.rows() && induced.cols() == matrix.cols(),
               Kname(FamilyName(f), k) + " shape");
      c.Expect(encoded.payoff1 == matrix.payoff1 && encoded.payoff2 == matrix.payoff2 &&
                   encoded.zero_sum == matrix.zero_sum,
               Kname(FamilyName(f), k) + " payoffs");
    }
  }
}

void A3(Check& c) {
  Theorems(c, Theorem::kT2, 2, 5);
  Rational previous;
  for (int k = 2; k <= 5; ++k) {
    ExperimentConfig config;
    config.family = Family::kBiggerNumber;
    config.k = k;
    config.eps = 0;
    config.init = "random";
    config.meta_nash = MetaNashMode::kLexicographic;
    config.best_response = ResponseMode::kLexicographic;
    config.seeds = ParseSeedList("0..99");
    SweepResult sweep = RunSweep(config, LoadExperimentGame(config));
    const bool all_ok = std::all_of(sweep.trials.begin(), sweep.trials.end(),
                                    [](const TrialResult& t) { return t.outcome == "converged"; });
    c.Expect(all_ok, Kname("sweep", k) + " trial did not converge");
    const Rational lo = MakeRational(1 << k, 4);
    const Rational hi = 2 * (1 << k);
    std::cout << "  sweep k=" << k << " mean " << sweep.mean.get_d();
    c.Expect(sweep.mean >= lo && sweep.mean <= hi, Kname("sweep mean", k));
    if (k > 2) {
      const Rational ratio = sweep.mean / previous;
      std::cout << " ratio " << ratio.get_d();
      c.Expect(ratio >= MakeRational(17, 10) && ratio <= MakeRational(23, 10),
               Kname("sweep growth", k));
    }
    std::cout << "\n";
    previous = sweep.mean;
  }
}

void A4(Check& c) {
  Theorems(c, Theorem::kT3, 2, 6);
  for (int k = 2; k <= 6; ++k) {
    RunTrace trace = RunDoubleOracle(PosgOracle(WeakBiggerNumber(k)), 1,
                                     TiebreakForTheorem(Theorem::kT3, k), 4 << k);
    c.Expect(trace.outcome == RunOutcome::kConverged, Kname("outcome", k));
    c.Expect(trace.iteration_count == (1 << k) - 1, Kname("iterations", k));
    for (const IterationRecord& r : trace.iterations) {
      c.Expect(r.br_cert1 == "scripted:certified" && r.br_cert2 == "scripted:certified",
               Kname("response certificate", k));
    }
  }
}

void A5(Check& c) {
  const int k = 3;
  Theorems(c, Theorem::kT4, k, k);
  NormalFormGame m = IncrementingMatrix(1 << k);
  for (int a = 0; a + 1 < (1 << k); ++a) {
    c.Expect(m.payoff1(a, a) == 0 && m.payoff2(a, a) == 0, "diagonal payoff");
    c.Expect(m.payoff1(a + 1, a) == MakeRational(1, 2 * k) && m.payoff2(a + 1, a) == -1,
             "increment payoff");
  }
  RunTrace trace = RunDoubleOracle(PosgOracle(Incrementing(k)), EpsForTheorem(Theorem::kT4, k),
                                   TiebreakForTheorem(Theorem::kT4, k), 4 << k);
  c.Expect(EpsForTheorem(Theorem::kT4, k) < MakeRational(1, k), "eps below 1/k");
  c.Expect(trace.iteration_count == (1 << k) - 1, "scripted run length");
}

void A6(Check& c) {
  Theorems(c, Theorem::kT5, 2, 6);
  for (int k = 2; k <= 6; ++k) {
    RunTrace trace = RunDoubleOracle(PosgOracle(MatchingPenniesChain(k)),
                                     EpsForTheorem(Theorem::kT5, k),
                                     TiebreakForTheorem(Theorem::kT5, k), 4 << k);
    const int half = 1 << (k - 1);
    c.Expect(static_cast<int>(trace.iterations.size()) >= half, Kname("schedule length", k));
    for (int t = 1; t <= half && t <= static_cast<int>(trace.iterations.size()); ++t) {
      const IterationRecord& r = trace.iterations[t - 1];
      c.Expect(r.gap == MakeRational(2, k), Kname("gap", k));
      c.Expect(r.meta_cert == "scripted:certified" && r.br_cert1 == "scripted:certified" &&
                   r.br_cert2 == "scripted:certified",
               Kname("certificates", k));
    }
    Posg g = MatchingPenniesChain(k);
    PosgOracle oracle(g);
    const PolicyIndex a = (PolicyIndex{1} << (k - 1)) - 1;
    const PolicyIndex b = (PolicyIndex{1} << k) - 1;
    IndexMixture half_half = {{a, MakeRational(1, 2)}, {b, MakeRational(1, 2)}};
    EquilibriumCertificate cert = VerifyEquilibrium(oracle, half_half, half_half, 0);
    c.Expect(cert.passed, Kname("support-2 equilibrium", k));
    c.Expect(oracle.EvaluateMixed(half_half, half_half)[Player::kOne] ==
                 1 - MakeRational(1, k),
             Kname("value", k));
  }
}

bool SameIgnoringAlpha(const RunTrace& plain, const RunTrace& gated) {
  return plain.iterations == gated.iterations && plain.outcome == gated.outcome &&
         plain.iteration_count == gated.iteration_count && !gated.first_gated;
}

void A7(Check& c) {
  for (Rational alpha : {MakeRational(1, 100), MakeRational(1, 10)}) {
    for (int k = 2; k <= 4; ++k) {
      RunTrace trace = RunAlphaDoubleOracle(PosgOracle(MatchingPenniesChain(k)),
                                            EpsForTheorem(Theorem::kT5, k), alpha,
                                            TiebreakForTheorem(Theorem::kT5, k), 4 << k);
      c.Expect(trace.first_gated && trace.first_gated->first == 1 &&
                   trace.first_gated->second == Player::kTwo,
               Kname("P2 gated at iteration 1", k));
      c.Expect(!trace.iterations.empty() && trace.iterations[0].impr2 == 0,
               Kname("P2 improvement", k));
    }
  }
  // Alpha below every improvement of the plain run.
  const Rational small = MakeRational(1, 1000);
  for (int k = 2; k <= 4; ++k) {
    Posg wbn = WeakBiggerNumber(k);
    TiebreakPolicy t3 = TiebreakForTheorem(Theorem::kT3, k);
    RunTrace plain = RunDoubleOracle(PosgOracle(wbn), 1, t3, 4 << k);
    RunTrace gated = RunAlphaDoubleOracle(PosgOracle(wbn), 1, small, t3, 4 << k);
    c.Expect(SameIgnoringAlpha(plain, gated), Kname("T3 alpha trace", k));

    Posg bn = BiggerNumber(k);
    TiebreakPolicy t2 = TiebreakForTheorem(Theorem::kT2, k);
    plain = RunDoubleOracle(PosgOracle(bn), 0, t2, 4 << k);
    gated = RunAlphaDoubleOracle(PosgOracle(bn), 0, small, t2, 4 << k);
    c.Expect(SameIgnoringAlpha(plain, gated), Kname("T2 alpha trace", k));
    for (const IterationRecord& r : plain.iterations) {
      c.Expect(!r.added1 || r.impr1 >= small, Kname("alpha below improvement", k));
      c.Expect(!r.added2 || r.impr2 >= small, Kname("alpha below improvement", k));
    }
  }
}

void A8(Check& c) {
  std::mt19937_64 rng(8);
  for (Family f : kAllFamilies) {
    for (int k = MinimumK(f); k <= 4; ++k) {
      Posg g = Generate(f, k);
      PosgOracle oracle(g);
      for (Player p : {Player::kOne, Player::kTwo}) {
        const PolicyIndex n_opp = g.NumPurePolicies(Opponent(p)).get_ui();
        for (int trial = 0; trial < 50; ++trial) {
          IndexMixture opp = testing::RandomMixture(n_opp, 4, rng);
          testing::BruteResponse brute = testing::BruteForceResponse(g, p, opp);
          OracleResponse r =
              oracle.BestResponse(p, opp, ResponseSelect::kLexicographic, nullptr, nullptr);
          const std::string where = Kname(FamilyName(f), k);
          c.Expect(r.value == brute.value, where + " value");
          c.Expect(r.count == brute.optimal.size(), where + " count");
          c.Expect(oracle.AllBestResponses(p, opp, 1 << 16) == brute.optimal, where + " set");
        }
      }
    }
  }
}

void A9(Check& c) {
  Posg g = MatchingPenniesChain(3);
  TiebreakPolicy lex;
  lex.init = std::make_pair(PolicyIndex{0}, PolicyIndex{0});
  RunTrace posg = RunDoubleOracle(PosgOracle(g), 0, lex, 32);
  RunTrace matrix = RunDoubleOracle(MatrixOracle(InducedNormalForm(g)), 0, lex, 32);
  c.Expect(posg.outcome == RunOutcome::kConverged, "POSG run converges");
  c.Expect(posg.iteration_count == matrix.iteration_count, "iteration counts");
  c.Expect(posg.iterations.size() == matrix.iterations.size(), "record counts");
  for (std::size_t i = 0; i < posg.iterations.size() && i < matrix.iterations.size(); ++i) {
    c.Expect(posg.iterations[i].set1 == matrix.iterations[i].set1 &&
                 posg.iterations[i].set2 == matrix.iterations[i].set2,
             "policy sets");
  }
  c.Expect(posg.iterations == matrix.iterations, "full records");
}

void A10(Check& c) {
  for (Family f : kAllFamilies) {
    for (int k = MinimumK(f); k <= 4; ++k) {
      Posg g = Generate(f, k);
      const std::string text = WriteGame(g);
      Posg back = ReadGame(text);
      c.Expect(WriteGame(back) == text, Kname(FamilyName(f), k) + " game text round-trip");
      c.Expect(InducedNormalForm(back).payoff1 == InducedNormalForm(g).payoff1,
               Kname(FamilyName(f), k) + " game payoffs round-trip");
    }
  }
  ExperimentConfig config;
  config.family = Family::kBiggerNumber;
  config.k = 4;
  config.init = "random";
  config.best_response = ResponseMode::kSeededRandom;
  config.seeds = ParseSeedList("0..7");
  LoadedGame loaded = LoadExperimentGame(config);
  setenv("DOLAB_JOBS", "1", 1);
  SweepResult a = RunSweep(config, loaded);
  setenv("DOLAB_JOBS", "4", 1);
  SweepResult b = RunSweep(config, loaded);
  unsetenv("DOLAB_JOBS");
  for (std::size_t i = 0; i < a.trials.size(); ++i) {
    c.Expect(a.trials[i].trace == b.trials[i].trace, "sweep traces byte-identical");
    TrialResult again = RunTrial(config, loaded, GameSummary(loaded), a.trials[i].seed);
    c.Expect(again.trace == a.trials[i].trace, "trial traces byte-identical");
  }
}

struct Criterion {
  int id;
  std::string description;
  std::function<void(Check&)> run;
};

}  // namespace
}  // namespace dolab

int main() {
  using namespace dolab;
  const std::vector<Criterion> criteria = {
      {1, "bigger-number induced normal forms equal their matrices (k=1..4)", A1},
      {2, "guess-the-string lexicographic runs (k=2..4)",
       [](Check& c) { Theorems(c, Theorem::kT1, 2, 4); }},
      {3, "bigger-number unique runs and random-start sweep (k=2..5)", A3},
      {4, "weak bigger-number scripted runs take 2^k-1 iterations (k=2..6)", A4},
      {5, "incrementing reduction and scripted run (k=3)", A5},
      {6, "matching-pennies chain schedule, value and support-2 equilibrium (k=2..6)", A6},
      {7, "alpha double oracle gating and small-alpha equivalence", A7},
      {8, "best responses match brute force (k<=4, 50 mixtures)", A8},
      {9, "POSG and induced normal form runs agree on matching-pennies chain (k=3)", A9},
      {10, "deterministic traces and game file round-trip", A10},
  };
  int failed = 0;
  for (const Criterion& criterion : criteria) {
    Check check;
    try {
      criterion.run(check);
    } catch (const std::exception& e) {
      check.Expect(false, std::string("exception: ") + e.what());
    }
    std::cout << (check.ok() ? "[PASS] " : "[FAIL] ") << "A" << criterion.id << " "
              << criterion.description;
    if (!check.ok()) std::cout << " (" << check.failure() << ")";
    std::cout << std::endl;
    failed += check.ok() ? 0 : 1;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
