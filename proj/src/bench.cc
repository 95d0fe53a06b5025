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

#include "dolab/bench.h"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <map>
#include <sstream>
#include <thread>

#include "dolab/equilibrium.h"
#include "dolab/errors.h"
#include "dolab/game_io.h"
#include "dolab/game_oracle.h"
#include "dolab/theorems.h"

namespace dolab {
namespace {

namespace fs = std::filesystem;

constexpr std::uint64_t kSummaryCells = 4096;
constexpr std::uint64_t kSummarySolves = 4096;
constexpr int kMaxDefaultIters = 1 << 20;

std::string Decimal(const Rational& r, int digits = 2) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(digits) << r.get_d();
  return out.str();
}

std::string FamilySlug(const LoadedGame& loaded) {
  std::string name = loaded.family ? std::string(FamilyName(*loaded.family)) : loaded.game.name();
  std::string slug;
  for (char c : name) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      slug += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
  }
  return slug.empty() ? "game" : slug;
}

PolicyIndex Encoded(const LoadedGame& loaded, Player p, PolicyIndex canonical) {
  if (!loaded.family) return canonical;
  return DecodeIndex(*loaded.family, loaded.k, p, canonical).value_or(canonical);
}

PolicyIndex Canonical(const LoadedGame& loaded, Player p, PolicyIndex x) {
  if (!loaded.family) return x;
  if (x >= EncodingSize(loaded.k)) {
    throw Error(ErrorCode::kIndexOutOfRange, "encoded policy " + std::to_string(x) +
                                                 " is outside [0, 2^k)");
  }
  return EncodeIndex(*loaded.family, loaded.k, p, x);
}

std::optional<std::pair<PolicyIndex, PolicyIndex>> ParseInit(const std::string& text) {
  if (text == "random") return std::nullopt;
  auto comma = text.find(',');
  if (comma == std::string::npos) {
    throw Error(ErrorCode::kInvalidArgument, "init must be 'random' or 'x,y'");
  }
  try {
    return std::make_pair(static_cast<PolicyIndex>(std::stoull(text.substr(0, comma))),
                          static_cast<PolicyIndex>(std::stoull(text.substr(comma + 1))));
  } catch (const std::logic_error&) {
    throw Error(ErrorCode::kInvalidArgument, "bad init '" + text + "'");
  }
}

// Fills every defaulted field so the config describes the run completely.
ExperimentConfig Resolve(ExperimentConfig config, const LoadedGame& loaded) {
  std::optional<TiebreakPolicy> scripted;
  if (config.schedule) scripted = TiebreakForTheorem(*config.schedule, loaded.k);
  if (!config.meta_nash) {
    config.meta_nash = scripted ? scripted->meta_nash : MetaNashMode::kLexicographic;
  }
  if (!config.best_response) {
    config.best_response = scripted ? scripted->best_response : ResponseMode::kLexicographic;
  }
  if (!config.init) {
    if (scripted) {
      config.init = std::to_string(Encoded(loaded, Player::kOne, scripted->init->first)) + "," +
                    std::to_string(Encoded(loaded, Player::kTwo, scripted->init->second));
    } else {
      config.init = "0,0";
    }
  }
  if (config.max_iters == 0) {
    if (loaded.family) {
      config.max_iters = static_cast<int>(4 * EncodingSize(loaded.k));
    } else {
      BigInt most = std::max(loaded.game.NumPurePolicies(Player::kOne),
                             loaded.game.NumPurePolicies(Player::kTwo));
      most *= 4;
      config.max_iters = most > kMaxDefaultIters ? kMaxDefaultIters
                                                 : static_cast<int>(most.get_si());
    }
  }
  return config;
}

TiebreakPolicy MakeTiebreak(const ExperimentConfig& config, const LoadedGame& loaded,
                            std::uint64_t seed) {
  TiebreakPolicy tb;
  tb.meta_nash = *config.meta_nash;
  tb.best_response = *config.best_response;
  if (config.schedule) tb.schedule = ScheduleForTheorem(*config.schedule, loaded.k);
  if (auto init = ParseInit(*config.init)) {
    tb.init = std::make_pair(Canonical(loaded, Player::kOne, init->first),
                             Canonical(loaded, Player::kTwo, init->second));
  }
  tb.seed = seed;
  return tb;
}

Json NullableSupport(const NormalFormGame& nfg) {
  try {
    if (nfg.zero_sum) {
      return std::max(MinimumOptimalSupport(nfg, Player::kOne, kSummarySolves),
                      MinimumOptimalSupport(nfg, Player::kTwo, kSummarySolves));
    }
    auto s = MinimumEquilibriumSupport(nfg, std::min(nfg.rows(), nfg.cols()), kSummarySolves);
    return s ? Json(*s) : Json(nullptr);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kEnumerationCapExceeded) throw;
    return nullptr;
  }
}

bool IsStatFailure(const TrialResult& r) { return r.legality_failure || r.predicate_failure; }

}  // namespace

void ValidateConfig(const ExperimentConfig& config) {
  auto fail = [](const std::string& why) { throw Error(ErrorCode::kInvalidArgument, why); };
  if (config.family.has_value() == !config.game_path.empty()) {
    fail("give exactly one of a family or a game file");
  }
  if (config.algo != "do" && config.algo != "alpha-do" && config.algo != "fp" &&
      config.algo != "brd") {
    fail("unknown algorithm '" + config.algo + "'");
  }
  if (config.eps < 0) fail("eps must be nonnegative");
  if (config.algo == "alpha-do") {
    if (!config.alpha) fail("alpha-do needs --alpha");
    if (*config.alpha <= 0 || *config.alpha > config.eps) fail("alpha-do needs 0 < alpha <= eps");
  } else if (config.alpha) {
    fail("--alpha applies only to alpha-do");
  }
  if (config.seeds.empty()) fail("seed list is empty");
  if (config.max_iters < 0) fail("max-iters must be nonnegative");
  if (config.rounds < 1) fail("rounds must be positive");
  const bool scripted = config.meta_nash == MetaNashMode::kScripted ||
                        config.best_response == ResponseMode::kScripted;
  if (scripted && !config.schedule) fail("scripted modes need --schedule");
  if (config.schedule) {
    if (!config.family || *config.family != TheoremFamily(*config.schedule)) {
      fail(std::string("schedule ") + std::string(TheoremName(*config.schedule)) + " runs on " +
           std::string(FamilyName(TheoremFamily(*config.schedule))));
    }
  }
  if (config.init) ParseInit(*config.init);
}

Json ConfigToJson(const ExperimentConfig& config) {
  Json j;
  j["family"] = config.family ? Json(FamilyName(*config.family)) : Json(nullptr);
  j["k"] = config.k;
  j["game"] = config.game_path.empty() ? Json(nullptr) : Json(config.game_path);
  j["algo"] = config.algo;
  j["eps"] = FormatRational(config.eps);
  j["alpha"] = config.alpha ? Json(FormatRational(*config.alpha)) : Json(nullptr);
  j["init"] = config.init ? Json(*config.init) : Json(nullptr);
  j["meta_nash"] = config.meta_nash ? Json(MetaNashModeName(*config.meta_nash)) : Json(nullptr);
  j["best_response"] =
      config.best_response ? Json(ResponseModeName(*config.best_response)) : Json(nullptr);
  j["schedule"] = config.schedule ? Json(TheoremName(*config.schedule)) : Json(nullptr);
  j["seeds"] = config.seeds;
  j["max_iters"] = config.max_iters;
  j["rounds"] = config.rounds;
  j["out"] = config.out.empty() ? Json(nullptr) : Json(config.out);
  return j;
}

ExperimentConfig ConfigFromJson(const Json& j, ExperimentConfig base) {
  auto bad = [](const std::string& key) {
    throw Error(ErrorCode::kInvalidArgument, "config field '" + key + "' is invalid");
  };
  try {
    for (const auto& [key, value] : j.items()) {
      if (value.is_null()) continue;
      if (key == "family") {
        base.family = ParseFamily(value.get<std::string>());
        if (!base.family) bad(key);
      } else if (key == "k") {
        base.k = value.get<int>();
      } else if (key == "game") {
        base.game_path = value.get<std::string>();
      } else if (key == "algo") {
        base.algo = value.get<std::string>();
      } else if (key == "eps") {
        base.eps = ParseRational(value.get<std::string>());
      } else if (key == "alpha") {
        base.alpha = ParseRational(value.get<std::string>());
      } else if (key == "init") {
        base.init = value.get<std::string>();
      } else if (key == "meta_nash") {
        base.meta_nash = ParseMetaNashMode(value.get<std::string>());
        if (!base.meta_nash) bad(key);
      } else if (key == "best_response") {
        base.best_response = ParseResponseMode(value.get<std::string>());
        if (!base.best_response) bad(key);
      } else if (key == "schedule") {
        base.schedule = ParseTheorem(value.get<std::string>());
        if (!base.schedule) bad(key);
      } else if (key == "seeds") {
        base.seeds = value.is_string() ? ParseSeedList(value.get<std::string>())
                                       : value.get<std::vector<std::uint64_t>>();
      } else if (key == "max_iters") {
        base.max_iters = value.get<int>();
      } else if (key == "rounds") {
        base.rounds = value.get<int>();
      } else if (key == "out") {
        base.out = value.get<std::string>();
      } else {
        throw Error(ErrorCode::kInvalidArgument, "unknown config field '" + key + "'");
      }
    }
  } catch (const Json::exception&) {
    throw Error(ErrorCode::kInvalidArgument, "config has a field of the wrong type");
  } catch (const std::invalid_argument& e) {
    throw Error(ErrorCode::kInvalidArgument, e.what());
  }
  return base;
}

std::vector<std::uint64_t> ParseSeedList(const std::string& text) {
  std::vector<std::uint64_t> out;
  try {
    auto range = text.find("..");
    if (range != std::string::npos) {
      std::uint64_t lo = std::stoull(text.substr(0, range));
      std::uint64_t hi = std::stoull(text.substr(range + 2));
      if (hi < lo) throw Error(ErrorCode::kInvalidArgument, "empty range '" + text + "'");
      for (std::uint64_t s = lo; s <= hi; ++s) out.push_back(s);
      return out;
    }
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) out.push_back(std::stoull(item));
  } catch (const std::logic_error&) {
    throw Error(ErrorCode::kInvalidArgument, "bad list '" + text + "'");
  }
  if (out.empty()) throw Error(ErrorCode::kInvalidArgument, "empty list");
  return out;
}

std::vector<int> ParseIntList(const std::string& text) {
  std::vector<int> out;
  for (std::uint64_t v : ParseSeedList(text)) out.push_back(static_cast<int>(v));
  return out;
}

LoadedGame LoadExperimentGame(const ExperimentConfig& config) {
  if (config.family) return {Generate(*config.family, config.k), config.family, config.k};
  LoadedGame loaded{LoadGame(config.game_path), std::nullopt, 0};
  const auto& meta = loaded.game.spec().metadata;
  auto family = meta.find("family");
  auto k = meta.find("k");
  if (family != meta.end() && k != meta.end()) {
    auto parsed = ParseFamily(family->second);
    if (parsed) {
      loaded.family = parsed;
      loaded.k = std::stoi(k->second);
    }
  }
  return loaded;
}

Json GameSummary(const LoadedGame& loaded) {
  const Posg& g = loaded.game;
  Json j;
  j["name"] = g.name();
  j["family"] = loaded.family ? Json(FamilyName(*loaded.family)) : Json(nullptr);
  j["k"] = loaded.family ? Json(loaded.k) : Json(nullptr);
  j["zero_sum"] = g.zero_sum();
  j["fully_observable"] = g.IsFullyObservable();
  j["tree_form"] = g.IsTreeForm();
  j["states"] = g.num_states();
  j["terminals"] = g.NumTerminals();
  const BigInt n1 = g.NumPurePolicies(Player::kOne);
  const BigInt n2 = g.NumPurePolicies(Player::kTwo);
  j["policies1"] = FormatBigInt(n1);
  j["policies2"] = FormatBigInt(n2);
  j["nash_support"] = n1 * n2 <= kSummaryCells ? NullableSupport(InducedNormalForm(g))
                                               : Json(nullptr);
  return j;
}

TrialResult RunTrial(const ExperimentConfig& base, const LoadedGame& loaded, const Json& summary,
                     std::uint64_t seed) {
  ExperimentConfig config = Resolve(base, loaded);
  config.seeds = {seed};
  config.out.clear();
  Json header;
  header["config"] = ConfigToJson(config);
  header["game"] = summary;

  TrialResult result;
  result.seed = seed;
  result.algorithm = config.algo;
  PosgOracle oracle(loaded.game);
  TiebreakPolicy tb = MakeTiebreak(config, loaded, seed);
  if (config.algo == "do" || config.algo == "alpha-do") {
    RunTrace trace = config.algo == "do"
                         ? RunDoubleOracle(oracle, config.eps, tb, config.max_iters)
                         : RunAlphaDoubleOracle(oracle, config.eps, *config.alpha, tb,
                                                config.max_iters);
    result.outcome = RunOutcomeName(trace.outcome);
    result.iterations = trace.iteration_count;
    result.m0 = std::max(Encoded(loaded, Player::kOne, trace.init1),
                         Encoded(loaded, Player::kTwo, trace.init2));
    if (!trace.iterations.empty()) result.final_gap = trace.iterations.back().gap;
    result.message = trace.message;
    if (trace.first_gated) {
      result.first_gated = std::string(PlayerName(trace.first_gated->second)) +
                           " at iteration " + std::to_string(trace.first_gated->first);
    }
    result.legality_failure =
        IsLegalityFailure(trace.outcome) || trace.outcome == RunOutcome::kScheduleBlocked;
    result.predicate_failure = trace.outcome == RunOutcome::kMaxIters;
    result.trace = WriteRunTrace(header, trace);
  } else if (config.algo == "fp") {
    FpTrace trace = RunFictitiousPlay(oracle, config.rounds, tb);
    result.outcome = trace.first_zero ? "exact-equilibrium" : "rounds-exhausted";
    result.iterations = static_cast<int>(trace.rounds.size());
    if (!trace.rounds.empty()) result.final_gap = trace.rounds.back().exploitability;
    if (trace.first_zero) {
      result.message = "exploitability 0 at round " + std::to_string(*trace.first_zero);
    }
    result.trace = WriteFpTrace(header, trace);
  } else {
    BrdTrace trace = RunBestResponseDynamics(oracle, config.rounds, tb);
    result.outcome = trace.converged ? "fixed-point" : trace.cycle_start ? "cycle" : "no-cycle";
    result.iterations = static_cast<int>(trace.profiles.size()) - 1;
    if (trace.cycle_start) {
      result.message = "cycle of length " + std::to_string(trace.cycle_length) +
                       " from round " + std::to_string(*trace.cycle_start);
    }
    result.trace = WriteBrdTrace(header, trace);
  }
  return result;
}

int ParallelJobs() {
  if (const char* env = std::getenv("DOLAB_JOBS")) {
    int jobs = std::atoi(env);
    if (jobs >= 1) return jobs;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

SweepResult RunSweep(const ExperimentConfig& config, const LoadedGame& loaded) {
  if (config.seeds.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument, "a sweep needs at least 2 seeds");
  }
  const Json summary = GameSummary(loaded);
  SweepResult sweep;
  sweep.trials.resize(config.seeds.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < config.seeds.size(); i = next++) {
      try {
        sweep.trials[i] = RunTrial(config, loaded, summary, config.seeds[i]);
      } catch (const Error& e) {
        TrialResult& r = sweep.trials[i];
        r.seed = config.seeds[i];
        r.algorithm = config.algo;
        r.outcome = "error";
        r.message = e.what();
        r.predicate_failure = true;
      }
    }
  };
  const int jobs = std::min<int>(ParallelJobs(), static_cast<int>(config.seeds.size()));
  std::vector<std::thread> workers;
  for (int j = 1; j < jobs; ++j) workers.emplace_back(work);
  work();
  for (std::thread& w : workers) w.join();

  BigInt total = 0;
  int counted = 0;
  for (const TrialResult& r : sweep.trials) {
    if (r.m0) ++sweep.m0_counts[*r.m0];
    if (IsStatFailure(r)) continue;
    total += r.iterations;
    sweep.min = counted == 0 ? r.iterations : std::min(sweep.min, r.iterations);
    sweep.max = counted == 0 ? r.iterations : std::max(sweep.max, r.iterations);
    ++counted;
  }
  if (counted > 0) {
    sweep.mean = Rational(total, counted);
    sweep.mean.canonicalize();
  }
  return sweep;
}

Json Report::ToJson() const {
  Json j;
  j["files"] = files;
  j["rows"] = Json::array();
  for (const ReportRow& r : rows) {
    Json row;
    row["family"] = r.family;
    row["k"] = r.k ? Json(*r.k) : Json(nullptr);
    row["flags"] = r.flags;
    row["runs"] = r.runs;
    row["iterations"] = {{"min", r.min_iterations},
                         {"max", r.max_iterations},
                         {"mean", FormatRational(r.mean_iterations)}};
    row["first_gap"] = r.first_gap;
    row["final_gap"] = r.final_gap;
    row["certified"] = r.certified;
    row["failed"] = r.failed;
    j["rows"].push_back(std::move(row));
  }
  return j;
}

std::string Report::ToText() const {
  auto flag = [](const Json& j, const char* key) {
    return j.contains(key) && j[key].is_boolean() ? (j[key].get<bool>() ? "Y" : "N") : "?";
  };
  std::ostringstream out;
  out << std::left << std::setw(22) << "family" << std::setw(4) << "k" << std::setw(4) << "ZS"
      << std::setw(4) << "FO" << std::setw(4) << "TF" << std::setw(7) << "supp" << std::setw(6)
      << "runs" << std::setw(22) << "iterations" << std::setw(12) << "first gap"
      << std::setw(12) << "final gap"
      << "certified\n";
  for (const ReportRow& r : rows) {
    std::string iterations =
        r.min_iterations == r.max_iterations
            ? std::to_string(r.min_iterations)
            : Decimal(r.mean_iterations) + " (" + std::to_string(r.min_iterations) + ".." +
                  std::to_string(r.max_iterations) + ")";
    const Json& support = r.flags.contains("nash_support") ? r.flags["nash_support"] : Json();
    out << std::setw(22) << r.family << std::setw(4) << (r.k ? std::to_string(*r.k) : "-")
        << std::setw(4) << flag(r.flags, "zero_sum") << std::setw(4)
        << flag(r.flags, "fully_observable") << std::setw(4) << flag(r.flags, "tree_form")
        << std::setw(7) << (support.is_number() ? std::to_string(support.get<int>()) : "-")
        << std::setw(6) << r.runs << std::setw(22) << iterations << std::setw(12) << r.first_gap
        << std::setw(12) << r.final_gap << r.certified << "/" << (r.certified + r.failed)
        << "\n";
  }
  return out.str();
}

Report BuildReport(const std::string& dir) {
  std::vector<fs::path> paths;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw Error(ErrorCode::kIoError, dir + " is not a directory");
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    if (entry.is_regular_file() && entry.path().extension() == ".jsonl") {
      paths.push_back(entry.path());
    }
  }
  if (ec) throw Error(ErrorCode::kIoError, "cannot list " + dir);
  if (paths.empty()) throw Error(ErrorCode::kMissingTraces, "no *.jsonl traces in " + dir);
  std::sort(paths.begin(), paths.end());

  struct Group {
    ReportRow row;
    BigInt total = 0;
    std::optional<Rational> first_gap;
    std::optional<Rational> final_gap;
  };
  auto order = [](const std::string& family) {
    for (std::size_t i = 0; i < std::size(kAllFamilies); ++i) {
      if (FamilyName(kAllFamilies[i]) == family) return static_cast<int>(i);
    }
    return static_cast<int>(std::size(kAllFamilies));
  };
  using Key = std::tuple<int, std::string, int>;
  std::map<Key, Group> groups;
  Report report;
  for (const fs::path& path : paths) {
    TraceFile file;
    try {
      file = ParseTrace(ReadFile(path.string()));
    } catch (const Error& e) {
      throw Error(ErrorCode::kMalformed, path.filename().string() + ": " + e.what());
    }
    report.files.push_back(path.filename().string());
    const Json& game = file.header.at("game");
    const std::string family =
        game.at("family").is_null() ? game.at("name").get<std::string>()
                                    : game.at("family").get<std::string>();
    std::optional<int> k;
    if (!game.at("k").is_null()) k = game.at("k").get<int>();
    Group& g = groups[Key{order(family), family, k.value_or(-1)}];
    ReportRow& row = g.row;
    if (row.runs == 0) {
      row.family = family;
      row.k = k;
      for (const char* key : {"zero_sum", "fully_observable", "tree_form", "nash_support"}) {
        row.flags[key] = game.at(key);
      }
    }
    const Json& result = file.result;
    const std::string algo = result.at("algorithm").get<std::string>();
    const int iterations = algo == "do" || algo == "alpha-do" ? result.at("iterations").get<int>()
                                                               : result.at("rounds").get<int>();
    row.min_iterations = row.runs == 0 ? iterations : std::min(row.min_iterations, iterations);
    row.max_iterations = row.runs == 0 ? iterations : std::max(row.max_iterations, iterations);
    g.total += iterations;
    ++row.runs;

    std::optional<Rational> first;
    for (const Json& rec : file.records) {
      if (rec.contains("gap")) {
        first = ParseRational(rec["gap"].get<std::string>());
      } else if (rec.contains("exploitability")) {
        first = ParseRational(rec["exploitability"].get<std::string>());
      }
      if (first) break;
    }
    if (first) g.first_gap = g.first_gap ? std::max(*g.first_gap, *first) : *first;
    if (result.contains("final_gap") && !result["final_gap"].is_null()) {
      Rational last = ParseRational(result["final_gap"].get<std::string>());
      g.final_gap = g.final_gap ? std::max(*g.final_gap, last) : last;
    }

    bool failed = false;
    if (result.contains("outcome")) {
      auto outcome = ParseRunOutcome(result["outcome"].get<std::string>());
      failed = !outcome || IsLegalityFailure(*outcome) ||
               *outcome == RunOutcome::kScheduleBlocked;
    }
    (failed ? row.failed : row.certified) += 1;
  }
  for (auto& [key, g] : groups) {
    g.row.mean_iterations = Rational(g.total, g.row.runs);
    g.row.mean_iterations.canonicalize();
    g.row.first_gap = g.first_gap ? FormatRational(*g.first_gap) : "-";
    g.row.final_gap = g.final_gap ? FormatRational(*g.final_gap) : "-";
    report.rows.push_back(std::move(g.row));
  }
  return report;
}

int CmdGenerate(Family family, int k, const std::string& out, std::ostream& os) {
  Posg g = Generate(family, k);
  if (out.empty()) {
    os << WriteGame(g);
    return kExitOk;
  }
  SaveGame(out, g);
  os << "wrote " << out << ": " << g.num_states() << " states, " << g.NumTerminals()
     << " terminals\n";
  return kExitOk;
}

int CmdRun(const ExperimentConfig& config, std::ostream& os) {
  ValidateConfig(config);
  LoadedGame loaded = LoadExperimentGame(config);
  TrialResult r = RunTrial(config, loaded, GameSummary(loaded), config.seeds.front());
  if (!config.out.empty()) WriteFile(config.out, r.trace);
  os << "game: " << loaded.game.name() << "\n";
  os << "algorithm: " << r.algorithm << ", seed " << r.seed << "\n";
  os << "outcome: " << r.outcome << "\n";
  if (r.algorithm == "do" || r.algorithm == "alpha-do") {
    os << "iterations: " << r.iterations << ", "
       << (r.legality_failure ? "certificate failure: " + r.message : "all certificates passed")
       << "\n";
  } else {
    os << "rounds: " << r.iterations << "\n";
  }
  if (!r.first_gated.empty()) os << "first gated addition: " << r.first_gated << "\n";
  if (r.final_gap) os << "final gap: " << FormatRational(*r.final_gap) << "\n";
  if (!r.message.empty() && !r.legality_failure) os << "note: " << r.message << "\n";
  if (!config.out.empty()) os << "trace: " << config.out << "\n";
  if (r.legality_failure) return kExitLegality;
  if (r.predicate_failure) return kExitPredicate;
  return kExitOk;
}

int CmdSweep(const ExperimentConfig& base, const std::vector<int>& ks, std::ostream& os) {
  ValidateConfig(base);
  if (base.seeds.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument, "a sweep needs at least 2 seeds");
  }
  if (!base.out.empty()) fs::create_directories(base.out);
  std::optional<Rational> previous;
  bool any_legality = false;
  bool any_failure = false;
  for (int k : ks) {
    ExperimentConfig config = base;
    config.k = k;
    if (!config.init) config.init = "random";
    LoadedGame loaded = LoadExperimentGame(config);
    SweepResult sweep = RunSweep(config, loaded);
    const std::string stem = FamilySlug(loaded) + (loaded.family ? "_k" + std::to_string(k) : "");
    Json summary;
    ExperimentConfig resolved = Resolve(config, loaded);
    resolved.out.clear();
    summary["config"] = ConfigToJson(resolved);
    summary["mean"] = FormatRational(sweep.mean);
    summary["min"] = sweep.min;
    summary["max"] = sweep.max;
    Json m0 = Json::object();
    for (const auto& [v, n] : sweep.m0_counts) m0[std::to_string(v)] = n;
    summary["m0_distribution"] = m0;
    summary["trials"] = Json::array();
    os << "sweep " << loaded.game.name() << ": " << sweep.trials.size() << " trials\n";
    std::vector<const TrialResult*> failed;
    for (const TrialResult& r : sweep.trials) {
      Json t;
      t["seed"] = r.seed;
      t["outcome"] = r.outcome;
      t["iterations"] = r.iterations;
      t["m0"] = r.m0 ? Json(*r.m0) : Json(nullptr);
      t["message"] = r.message;
      summary["trials"].push_back(std::move(t));
      if (IsStatFailure(r)) failed.push_back(&r);
      any_legality = any_legality || r.legality_failure;
      any_failure = any_failure || r.predicate_failure;
      if (!base.out.empty() && !r.trace.empty()) {
        WriteFile((fs::path(base.out) / (stem + "_seed" + std::to_string(r.seed) + ".jsonl"))
                      .string(),
                  r.trace);
      }
    }
    os << "  iterations: mean " << Decimal(sweep.mean) << " (" << FormatRational(sweep.mean)
       << "), min " << sweep.min << ", max " << sweep.max << "\n";
    if (previous && *previous > 0) {
      Rational ratio = sweep.mean / *previous;
      os << "  growth vs previous k: " << Decimal(ratio, 3) << "\n";
      summary["growth"] = FormatRational(ratio);
    }
    previous = sweep.mean;
    os << "  M(0) distribution:";
    for (const auto& [v, n] : sweep.m0_counts) os << " " << v << ":" << n;
    os << "\n";
    for (const TrialResult* r : failed) {
      os << "  failed seed " << r->seed << ": " << r->outcome << " " << r->message << "\n";
    }
    if (!base.out.empty()) {
      WriteFile((fs::path(base.out) / ("sweep_" + stem + ".json")).string(),
                summary.dump(2) + "\n");
    }
  }
  if (any_legality) return kExitLegality;
  if (any_failure) return kExitPredicate;
  return kExitOk;
}

int CmdVerifyTheorem(Theorem theorem, const std::vector<int>& ks, const std::string& out,
                     std::ostream& os) {
  std::string lines;
  bool illegal = false;
  bool failed = false;
  for (int k : ks) {
    TheoremVerdict v = VerifyTheorem(theorem, k);
    lines += v.ToJson().dump() + "\n";
    illegal = illegal || v.status == VerdictStatus::kLegalityFailure;
    failed = failed || v.status == VerdictStatus::kPredicateFailure;
  }
  os << lines;
  if (!out.empty()) WriteFile(out, lines);
  if (illegal) return kExitLegality;
  if (failed) return kExitPredicate;
  return kExitOk;
}

int CmdReport(const std::string& dir, const std::string& out, std::ostream& os) {
  Report report = BuildReport(dir);
  const std::string path = out.empty() ? (fs::path(dir) / "report.json").string() : out;
  WriteFile(path, report.ToJson().dump(2) + "\n");
  os << report.ToText();
  return kExitOk;
}

}  // namespace dolab
