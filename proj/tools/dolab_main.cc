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

// Command-line front end: generate, run, sweep, verify-theorem, report.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "dolab/bench.h"
#include "dolab/errors.h"
#include "dolab/game_io.h"

namespace {

using dolab::Error;
using dolab::ErrorCode;
using dolab::ExperimentConfig;

struct ExperimentFlags {
  std::string config;
  std::string family;
  std::string k;
  std::string game;
  std::string algo;
  std::string eps;
  std::string alpha;
  std::string init;
  std::string meta_nash;
  std::string best_response;
  std::string schedule;
  std::string seeds;
  int max_iters = 0;
  int rounds = 0;
  std::string out;
};

void AddExperimentFlags(CLI::App* cmd, ExperimentFlags& f, bool sweep) {
  cmd->add_option("--config", f.config, "JSON config file; flags override its fields");
  cmd->add_option("--family", f.family, "game family");
  cmd->add_option("--k", f.k, sweep ? "size parameter, a list or a range a..b" : "size parameter");
  cmd->add_option("--game", f.game, "game file in the canonical format");
  cmd->add_option("--algo", f.algo, "do | alpha-do | fp | brd");
  cmd->add_option("--eps", f.eps, "tolerance as num/den");
  cmd->add_option("--alpha", f.alpha, "alpha-do admission threshold");
  cmd->add_option("--init", f.init, "'random' or 'x,y'");
  cmd->add_option("--meta-nash", f.meta_nash, "unique-or-fail | lexicographic | scripted");
  cmd->add_option("--best-response", f.best_response,
                  "unique-or-fail | lexicographic | seeded-random | scripted");
  cmd->add_option("--schedule", f.schedule, "adversarial schedule T1..T5");
  cmd->add_option(sweep ? "--seeds,--seed" : "--seed,--seeds", f.seeds,
                  "seed, list or range a..b");
  cmd->add_option("--max-iters", f.max_iters, "iteration limit (default 4 * 2^k)");
  cmd->add_option("--rounds", f.rounds, "rounds for fp and brd");
  cmd->add_option("--out", f.out, sweep ? "output directory" : "trace file");
}

std::optional<dolab::Rational> RationalFlag(const std::string& text) {
  try {
    return dolab::ParseRational(text);
  } catch (const std::invalid_argument& e) {
    throw Error(ErrorCode::kInvalidArgument, "bad rational '" + text + "'");
  }
}

// Defaults, then the config file, then flags given on the command line.
ExperimentConfig BuildConfig(const CLI::App* cmd, const ExperimentFlags& f) {
  ExperimentConfig config;
  if (!f.config.empty()) {
    dolab::Json j = dolab::Json::parse(dolab::ReadFile(f.config), nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      throw Error(ErrorCode::kInvalidArgument, f.config + " is not a JSON object");
    }
    config = dolab::ConfigFromJson(j, config);
  }
  auto given = [cmd](const char* name) { return cmd->get_option(name)->count() > 0; };
  if (given("--family")) {
    config.family = dolab::ParseFamily(f.family);
    if (!config.family) throw Error(ErrorCode::kInvalidFamily, "unknown family " + f.family);
    config.game_path.clear();
  }
  if (given("--game")) {
    config.game_path = f.game;
    config.family.reset();
  }
  if (given("--k")) config.k = dolab::ParseIntList(f.k).front();
  if (given("--algo")) config.algo = f.algo;
  if (given("--eps")) config.eps = *RationalFlag(f.eps);
  if (given("--alpha")) config.alpha = RationalFlag(f.alpha);
  if (given("--init")) config.init = f.init;
  if (given("--meta-nash")) {
    config.meta_nash = dolab::ParseMetaNashMode(f.meta_nash);
    if (!config.meta_nash) throw Error(ErrorCode::kInvalidArgument, "bad --meta-nash");
  }
  if (given("--best-response")) {
    config.best_response = dolab::ParseResponseMode(f.best_response);
    if (!config.best_response) throw Error(ErrorCode::kInvalidArgument, "bad --best-response");
  }
  if (given("--schedule")) {
    config.schedule = dolab::ParseTheorem(f.schedule);
    if (!config.schedule) throw Error(ErrorCode::kInvalidArgument, "bad --schedule");
  }
  if (given("--seeds")) config.seeds = dolab::ParseSeedList(f.seeds);
  if (given("--max-iters")) config.max_iters = f.max_iters;
  if (given("--rounds")) config.rounds = f.rounds;
  if (given("--out")) config.out = f.out;
  return config;
}

int ExitFor(const Error& e) {
  switch (e.code()) {
    case ErrorCode::kIoError:
    case ErrorCode::kMissingTraces:
      return dolab::kExitIo;
    default:
      return dolab::kExitUsage;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Double oracle dynamics on partially observable stochastic games"};
  app.require_subcommand(1);

  auto* generate = app.add_subcommand("generate", "write a family game in the canonical format");
  std::string gen_family;
  int gen_k = 0;
  std::string gen_out;
  generate->add_option("--family", gen_family, "game family")->required();
  generate->add_option("--k", gen_k, "size parameter")->required();
  generate->add_option("--out", gen_out, "output file (default: stdout)");

  auto* run = app.add_subcommand("run", "run one configured trial");
  ExperimentFlags run_flags;
  AddExperimentFlags(run, run_flags, false);

  auto* sweep = app.add_subcommand("sweep", "run seeded trials and aggregate");
  ExperimentFlags sweep_flags;
  AddExperimentFlags(sweep, sweep_flags, true);

  auto* verify = app.add_subcommand("verify-theorem", "check a theorem schedule for a k range");
  std::string theorem;
  std::string verify_k;
  std::string verify_out;
  verify->add_option("--theorem", theorem, "T1..T5")->required();
  verify->add_option("--k", verify_k, "k, list or range a..b")->required();
  verify->add_option("--out", verify_out, "verdict file (JSON lines)");

  auto* report = app.add_subcommand("report", "summarize a directory of traces");
  std::string traces;
  std::string report_out;
  report->add_option("--traces", traces, "trace directory")->required();
  report->add_option("--out", report_out, "report file (default: <traces>/report.json)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? dolab::kExitOk : dolab::kExitUsage;
  }

  try {
    if (*generate) {
      auto family = dolab::ParseFamily(gen_family);
      if (!family) throw Error(ErrorCode::kInvalidFamily, "unknown family " + gen_family);
      return dolab::CmdGenerate(*family, gen_k, gen_out, std::cout);
    }
    if (*run) return dolab::CmdRun(BuildConfig(run, run_flags), std::cout);
    if (*sweep) {
      ExperimentConfig config = BuildConfig(sweep, sweep_flags);
      std::vector<int> ks{config.k};
      if (!sweep_flags.k.empty()) ks = dolab::ParseIntList(sweep_flags.k);
      return dolab::CmdSweep(config, ks, std::cout);
    }
    if (*verify) {
      auto parsed = dolab::ParseTheorem(theorem);
      if (!parsed) throw Error(ErrorCode::kInvalidArgument, "unknown theorem " + theorem);
      return dolab::CmdVerifyTheorem(*parsed, dolab::ParseIntList(verify_k), verify_out,
                                     std::cout);
    }
    if (*report) return dolab::CmdReport(traces, report_out, std::cout);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ExitFor(e);
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return dolab::kExitIo;
  }
  return dolab::kExitUsage;
}
