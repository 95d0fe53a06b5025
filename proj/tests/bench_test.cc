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

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "dolab/bench.h"
#include "dolab/errors.h"
#include "dolab/game_io.h"

namespace dolab {
namespace {

namespace fs = std::filesystem;

class TempDir {
 public:
  explicit TempDir(const std::string& name)
      : path_(fs::temp_directory_path() / ("dolab_" + name)) {
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

ExperimentConfig FamilyConfig(Family f, int k) {
  ExperimentConfig c;
  c.family = f;
  c.k = k;
  return c;
}

ErrorCode ValidationError(const ExperimentConfig& c) {
  try {
    ValidateConfig(c);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "config accepted";
  return ErrorCode::kIoError;
}

TEST(SeedListTest, Forms) {
  EXPECT_EQ(ParseSeedList("4"), (std::vector<std::uint64_t>{4}));
  EXPECT_EQ(ParseSeedList("1,5,2"), (std::vector<std::uint64_t>{1, 5, 2}));
  EXPECT_EQ(ParseSeedList("3..6"), (std::vector<std::uint64_t>{3, 4, 5, 6}));
  EXPECT_THROW(ParseSeedList("x"), Error);
  EXPECT_THROW(ParseSeedList("5..3"), Error);
}

TEST(ConfigTest, JsonRoundTrip) {
  ExperimentConfig c = FamilyConfig(Family::kMatchingPenniesChain, 3);
  c.algo = "alpha-do";
  c.eps = MakeRational(1, 3);
  c.alpha = MakeRational(1, 100);
  c.schedule = Theorem::kT5;
  c.meta_nash = MetaNashMode::kScripted;
  c.seeds = {1, 2, 3};
  c.init = "7,0";
  Json j = ConfigToJson(c);
  EXPECT_EQ(j["eps"], "1/3");
  ExperimentConfig back = ConfigFromJson(j, ExperimentConfig{});
  EXPECT_EQ(ConfigToJson(back), j);
}

TEST(ConfigTest, FieldsOverrideBase) {
  ExperimentConfig base = FamilyConfig(Family::kBiggerNumber, 3);
  base.max_iters = 9;
  ExperimentConfig c = ConfigFromJson(Json{{"k", 4}, {"seeds", "0..2"}}, base);
  EXPECT_EQ(c.k, 4);
  EXPECT_EQ(c.max_iters, 9);
  EXPECT_EQ(c.seeds.size(), 3u);
  EXPECT_THROW(ConfigFromJson(Json{{"colour", "red"}}, base), Error);
  EXPECT_THROW(ConfigFromJson(Json{{"meta_nash", "random"}}, base), Error);
}

TEST(ConfigTest, Validation) {
  ExperimentConfig c = FamilyConfig(Family::kBiggerNumber, 3);
  EXPECT_NO_THROW(ValidateConfig(c));
  ExperimentConfig bad = c;
  bad.eps = -1;
  EXPECT_EQ(ValidationError(bad), ErrorCode::kInvalidArgument);
  bad = c;
  bad.algo = "alpha-do";
  bad.alpha = 1;
  bad.eps = MakeRational(1, 2);
  EXPECT_EQ(ValidationError(bad), ErrorCode::kInvalidArgument);
  bad = c;
  bad.family.reset();
  EXPECT_EQ(ValidationError(bad), ErrorCode::kInvalidArgument);
  bad = c;
  bad.best_response = ResponseMode::kScripted;
  EXPECT_EQ(ValidationError(bad), ErrorCode::kInvalidArgument);
  bad = c;
  bad.schedule = Theorem::kT5;
  EXPECT_EQ(ValidationError(bad), ErrorCode::kInvalidArgument);
  bad = c;
  bad.seeds.clear();
  EXPECT_EQ(ValidationError(bad), ErrorCode::kInvalidArgument);
}

TEST(TrialTest, HeaderCarriesResolvedConfig) {
  ExperimentConfig c = FamilyConfig(Family::kMatchingPenniesChain, 3);
  c.schedule = Theorem::kT5;
  c.eps = MakeRational(1, 2);
  LoadedGame loaded = LoadExperimentGame(c);
  TrialResult r = RunTrial(c, loaded, GameSummary(loaded), 5);
  TraceFile file = ParseTrace(r.trace);
  const Json& config = file.header["config"];
  EXPECT_EQ(config["init"], "7,0");
  EXPECT_EQ(config["meta_nash"], "scripted");
  EXPECT_EQ(config["max_iters"], 32);
  EXPECT_EQ(config["seeds"], Json::array({5}));
  EXPECT_EQ(file.header["game"]["nash_support"], 2);
  EXPECT_EQ(r.m0, 7u);
  EXPECT_EQ(r.trace, RunTrial(c, loaded, GameSummary(loaded), 5).trace);
}

TEST(TrialTest, GameFileRuns) {
  TempDir dir("trial_file");
  const std::string path = (dir.path() / "game.txt").string();
  SaveGame(path, Generate(Family::kWeakBiggerNumber, 3));
  ExperimentConfig c;
  c.game_path = path;
  LoadedGame loaded = LoadExperimentGame(c);
  ASSERT_TRUE(loaded.family.has_value());
  EXPECT_EQ(loaded.k, 3);
  TrialResult r = RunTrial(c, loaded, GameSummary(loaded), 0);
  EXPECT_EQ(r.outcome, "converged");
}

TEST(SweepTest, NeedsTwoSeeds) {
  ExperimentConfig c = FamilyConfig(Family::kBiggerNumber, 3);
  c.init = "random";
  EXPECT_THROW(RunSweep(c, LoadExperimentGame(c)), Error);
}

TEST(SweepTest, ResultsDoNotDependOnThreadCount) {
  ExperimentConfig c = FamilyConfig(Family::kBiggerNumber, 3);
  c.init = "random";
  c.seeds = ParseSeedList("0..15");
  LoadedGame loaded = LoadExperimentGame(c);
  setenv("DOLAB_JOBS", "1", 1);
  SweepResult serial = RunSweep(c, loaded);
  setenv("DOLAB_JOBS", "4", 1);
  SweepResult parallel = RunSweep(c, loaded);
  unsetenv("DOLAB_JOBS");
  ASSERT_EQ(serial.trials.size(), parallel.trials.size());
  for (std::size_t i = 0; i < serial.trials.size(); ++i) {
    EXPECT_EQ(serial.trials[i].seed, c.seeds[i]);
    EXPECT_EQ(serial.trials[i].trace, parallel.trials[i].trace);
  }
  EXPECT_EQ(serial.mean, parallel.mean);
  EXPECT_EQ(serial.m0_counts, parallel.m0_counts);
}

TEST(SweepTest, WeakBiggerNumberCountsDependOnStart) {
  ExperimentConfig c = FamilyConfig(Family::kWeakBiggerNumber, 4);
  c.schedule = Theorem::kT3;
  c.meta_nash = MetaNashMode::kLexicographic;
  c.eps = 1;
  c.init = "random";
  c.seeds = ParseSeedList("0..39");
  SweepResult sweep = RunSweep(c, LoadExperimentGame(c));
  for (const TrialResult& r : sweep.trials) {
    ASSERT_EQ(r.outcome, "converged") << r.message;
    EXPECT_EQ(r.iterations, 15 - static_cast<int>(*r.m0)) << "seed " << r.seed;
  }
}

TEST(ReportTest, MissingTraces) {
  TempDir dir("report_empty");
  try {
    BuildReport(dir.path().string());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMissingTraces);
  }
}

TEST(ReportTest, FiveFamiliesAreDeterministic) {
  TempDir dir("report_five");
  for (Family f : kAllFamilies) {
    ExperimentConfig c = FamilyConfig(f, 3);
    c.out = (dir.path() / (std::string(FamilyName(f)) + ".jsonl")).string();
    std::ostringstream os;
    EXPECT_EQ(CmdRun(c, os), kExitOk) << os.str();
  }
  Report a = BuildReport(dir.path().string());
  Report b = BuildReport(dir.path().string());
  ASSERT_EQ(a.rows.size(), 5u);
  EXPECT_EQ(a.ToText(), b.ToText());
  EXPECT_EQ(a.ToJson(), b.ToJson());
  EXPECT_EQ(a.rows[0].family, "GuessTheString");
  EXPECT_EQ(a.rows[0].flags["nash_support"], 8);
  EXPECT_EQ(a.rows[3].flags["zero_sum"], false);
  EXPECT_EQ(a.rows[4].flags["tree_form"], true);
  std::ostringstream os;
  EXPECT_EQ(CmdReport(dir.path().string(), "", os), kExitOk);
  EXPECT_TRUE(fs::exists(dir.path() / "report.json"));
}

TEST(CommandTest, RunSummaryAndExitCodes) {
  ExperimentConfig c = FamilyConfig(Family::kWeakBiggerNumber, 4);
  c.schedule = Theorem::kT3;
  c.eps = 1;
  std::ostringstream os;
  EXPECT_EQ(CmdRun(c, os), kExitOk);
  EXPECT_NE(os.str().find("iterations: 15, all certificates passed"), std::string::npos)
      << os.str();

  ExperimentConfig gated = FamilyConfig(Family::kMatchingPenniesChain, 3);
  gated.schedule = Theorem::kT5;
  gated.algo = "alpha-do";
  gated.eps = MakeRational(1, 3);
  gated.alpha = MakeRational(1, 100);
  std::ostringstream gated_os;
  EXPECT_EQ(CmdRun(gated, gated_os), kExitLegality);
  EXPECT_NE(gated_os.str().find("schedule-blocked"), std::string::npos);
  EXPECT_NE(gated_os.str().find("P2 at iteration 1"), std::string::npos);

  ExperimentConfig short_run = FamilyConfig(Family::kGuessTheString, 3);
  short_run.max_iters = 2;
  std::ostringstream short_os;
  EXPECT_EQ(CmdRun(short_run, short_os), kExitPredicate);
}

TEST(CommandTest, GenerateWritesCanonicalFile) {
  TempDir dir("generate");
  const std::string path = (dir.path() / "mpc.txt").string();
  std::ostringstream os;
  EXPECT_EQ(CmdGenerate(Family::kMatchingPenniesChain, 3, path, os), kExitOk);
  Posg g = LoadGame(path);
  EXPECT_EQ(g.num_states() - g.NumTerminals(), 3);
  EXPECT_EQ(g.NumTerminals(), 12);
  EXPECT_EQ(WriteGame(g), ReadFile(path));
  EXPECT_THROW(CmdGenerate(Family::kMatchingPenniesChain, 0, path, os), Error);
}

TEST(CommandTest, VerifyTheoremEmitsVerdicts) {
  std::ostringstream os;
  EXPECT_EQ(CmdVerifyTheorem(Theorem::kT3, {2, 3}, "", os), kExitOk);
  std::istringstream in(os.str());
  int lines = 0;
  for (std::string line; std::getline(in, line);) {
    Json j = Json::parse(line);
    EXPECT_EQ(j["verdict"], "pass");
    ++lines;
  }
  EXPECT_EQ(lines, 2);
}

}  // namespace
}  // namespace dolab
