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

#ifndef DOLAB_BENCH_H_
#define DOLAB_BENCH_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "dolab/dynamics.h"
#include "dolab/families.h"
#include "dolab/posg.h"
#include "dolab/trace_io.h"

namespace dolab {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitLegality = 2,
  kExitPredicate = 3,
  kExitIo = 4,
};

struct ExperimentConfig {
  std::optional<Family> family;
  int k = 0;
  std::string game_path;  // used when no family is given
  std::string algo = "do";  // do | alpha-do | fp | brd
  Rational eps = 0;
  std::optional<Rational> alpha;
  // "random" or "x,y". For family games x and y are encoded integers,
  // otherwise canonical indices. Unset: the schedule's start, else 0,0.
  std::optional<std::string> init;
  std::optional<MetaNashMode> meta_nash;
  std::optional<ResponseMode> best_response;
  std::optional<Theorem> schedule;
  std::vector<std::uint64_t> seeds{0};
  int max_iters = 0;  // 0: 4 * 2^k for family games, 4 * max |Pi_i| otherwise
  int rounds = 1000;  // fp and brd
  std::string out;
};

// Throws Error(kInvalidArgument) on a violated invariant.
void ValidateConfig(const ExperimentConfig& config);

Json ConfigToJson(const ExperimentConfig& config);
// Fields present in `j` replace those of `base`.
ExperimentConfig ConfigFromJson(const Json& j, ExperimentConfig base);

// Parses "a", "a,b,c" or "a..b".
std::vector<std::uint64_t> ParseSeedList(const std::string& text);
std::vector<int> ParseIntList(const std::string& text);

struct LoadedGame {
  Posg game;
  std::optional<Family> family;
  int k = 0;
};
LoadedGame LoadExperimentGame(const ExperimentConfig& config);

// Structural flags and the measured equilibrium support size, or null when
// the induced game is too large to search.
Json GameSummary(const LoadedGame& loaded);

struct TrialResult {
  std::uint64_t seed = 0;
  std::string algorithm;
  std::string outcome;
  int iterations = 0;  // DO iterations, or rounds for fp and brd
  std::optional<PolicyIndex> m0;  // encoded when the family is known
  std::optional<Rational> final_gap;
  std::string message;
  std::string first_gated;  // alpha-do: "P<i> at iteration <t>"
  std::string trace;  // JSON lines
  bool legality_failure = false;
  bool predicate_failure = false;
};

// Runs one trial. `summary` is GameSummary(loaded), passed in so sweeps
// compute it once.
TrialResult RunTrial(const ExperimentConfig& config, const LoadedGame& loaded,
                     const Json& summary, std::uint64_t seed);

struct SweepResult {
  std::vector<TrialResult> trials;  // seed order
  Rational mean;
  int min = 0;
  int max = 0;
  std::map<PolicyIndex, int> m0_counts;
};

// Trials run on DOLAB_JOBS threads (default: hardware concurrency). Throws
// Error(kInvalidArgument) for fewer than two seeds.
SweepResult RunSweep(const ExperimentConfig& config, const LoadedGame& loaded);

int ParallelJobs();

struct ReportRow {
  std::string family;
  std::optional<int> k;
  Json flags;  // zero_sum, fully_observable, tree_form, nash_support
  int runs = 0;
  int min_iterations = 0;
  int max_iterations = 0;
  Rational mean_iterations;
  std::string first_gap;
  std::string final_gap;
  int certified = 0;
  int failed = 0;
};

struct Report {
  std::vector<ReportRow> rows;
  std::vector<std::string> files;

  Json ToJson() const;
  std::string ToText() const;
};

// Reads every *.jsonl trace under `dir`. Throws Error(kMissingTraces) when
// there are none.
Report BuildReport(const std::string& dir);

// Subcommands. Each prints a human summary and returns an ExitCode.
int CmdGenerate(Family family, int k, const std::string& out, std::ostream& os);
int CmdRun(const ExperimentConfig& config, std::ostream& os);
int CmdSweep(const ExperimentConfig& config, const std::vector<int>& ks, std::ostream& os);
int CmdVerifyTheorem(Theorem theorem, const std::vector<int>& ks, const std::string& out,
                     std::ostream& os);
int CmdReport(const std::string& dir, const std::string& out, std::ostream& os);

}  // namespace dolab

#endif  // DOLAB_BENCH_H_
