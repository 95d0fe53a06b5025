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

#include "dolab/trace_io.h"

#include <sstream>

#include "dolab/errors.h"

namespace dolab {
namespace {

Json Rat(const Rational& r) { return FormatRational(r); }
Rational Rat(const Json& j) { return ParseRational(j.get<std::string>()); }

Json Set(const std::vector<PolicyIndex>& set) {
  Json out = Json::array();
  for (PolicyIndex i : set) out.push_back(i);
  return out;
}

std::string Lines(const Json& header, const std::vector<Json>& records, const Json& result) {
  std::string out = header.dump() + "\n";
  for (const Json& r : records) out += r.dump() + "\n";
  out += result.dump() + "\n";
  return out;
}

Json WithType(Json header, const char* type) {
  header["type"] = type;
  return header;
}

}  // namespace

Json MixtureToJson(const IndexMixture& m) {
  Json out = Json::array();
  for (const auto& [index, w] : m) out.push_back({index, FormatRational(w)});
  return out;
}

IndexMixture MixtureFromJson(const Json& j) {
  IndexMixture m;
  for (const Json& e : j) m.push_back({e.at(0).get<PolicyIndex>(), Rat(e.at(1))});
  return m;
}

Json IterationToJson(const IterationRecord& rec) {
  Json j;
  j["type"] = "iteration";
  j["t"] = rec.t;
  j["set1"] = Set(rec.set1);
  j["set2"] = Set(rec.set2);
  j["mu1"] = MixtureToJson(rec.mu1);
  j["mu2"] = MixtureToJson(rec.mu2);
  j["meta_value1"] = Rat(rec.meta_value1);
  j["meta_value2"] = Rat(rec.meta_value2);
  j["meta_cert"] = rec.meta_cert;
  j["br1"] = rec.br1;
  j["br2"] = rec.br2;
  j["br_value1"] = Rat(rec.br_value1);
  j["br_value2"] = Rat(rec.br_value2);
  j["br_count1"] = FormatBigInt(rec.br_count1);
  j["br_count2"] = FormatBigInt(rec.br_count2);
  j["br_cert1"] = rec.br_cert1;
  j["br_cert2"] = rec.br_cert2;
  j["impr1"] = Rat(rec.impr1);
  j["impr2"] = Rat(rec.impr2);
  j["gap"] = Rat(rec.gap);
  j["added1"] = rec.added1;
  j["added2"] = rec.added2;
  j["gated1"] = rec.gated1;
  j["gated2"] = rec.gated2;
  j["max_support"] = rec.max_support;
  return j;
}

IterationRecord IterationFromJson(const Json& j) {
  IterationRecord rec;
  rec.t = j.at("t").get<int>();
  rec.set1 = j.at("set1").get<std::vector<PolicyIndex>>();
  rec.set2 = j.at("set2").get<std::vector<PolicyIndex>>();
  rec.mu1 = MixtureFromJson(j.at("mu1"));
  rec.mu2 = MixtureFromJson(j.at("mu2"));
  rec.meta_value1 = Rat(j.at("meta_value1"));
  rec.meta_value2 = Rat(j.at("meta_value2"));
  rec.meta_cert = j.at("meta_cert").get<std::string>();
  rec.br1 = j.at("br1").get<PolicyIndex>();
  rec.br2 = j.at("br2").get<PolicyIndex>();
  rec.br_value1 = Rat(j.at("br_value1"));
  rec.br_value2 = Rat(j.at("br_value2"));
  rec.br_count1 = ParseBigInt(j.at("br_count1").get<std::string>());
  rec.br_count2 = ParseBigInt(j.at("br_count2").get<std::string>());
  rec.br_cert1 = j.at("br_cert1").get<std::string>();
  rec.br_cert2 = j.at("br_cert2").get<std::string>();
  rec.impr1 = Rat(j.at("impr1"));
  rec.impr2 = Rat(j.at("impr2"));
  rec.gap = Rat(j.at("gap"));
  rec.added1 = j.at("added1").get<bool>();
  rec.added2 = j.at("added2").get<bool>();
  rec.gated1 = j.at("gated1").get<bool>();
  rec.gated2 = j.at("gated2").get<bool>();
  rec.max_support = j.at("max_support").get<PolicyIndex>();
  return rec;
}

Json RunResultToJson(const RunTrace& trace) {
  Json j;
  j["type"] = "result";
  j["algorithm"] = trace.algorithm;
  j["eps"] = Rat(trace.eps);
  j["alpha"] = trace.alpha ? Json(FormatRational(*trace.alpha)) : Json(nullptr);
  j["init"] = {trace.init1, trace.init2};
  j["m0"] = trace.M0();
  j["outcome"] = RunOutcomeName(trace.outcome);
  j["iterations"] = trace.iteration_count;
  j["message"] = trace.message;
  j["final_gap"] = trace.iterations.empty() ? Json(nullptr)
                                            : Json(FormatRational(trace.iterations.back().gap));
  if (trace.first_gated) {
    j["first_gated"] = {{"t", trace.first_gated->first},
                        {"player", PlayerName(trace.first_gated->second)}};
  } else {
    j["first_gated"] = nullptr;
  }
  return j;
}

std::string WriteRunTrace(const Json& header, const RunTrace& trace) {
  std::vector<Json> records;
  for (const IterationRecord& rec : trace.iterations) records.push_back(IterationToJson(rec));
  return Lines(WithType(header, "header"), records, RunResultToJson(trace));
}

std::string WriteFpTrace(const Json& header, const FpTrace& trace) {
  std::vector<Json> records;
  for (const FpRound& r : trace.rounds) {
    Json j;
    j["type"] = "round";
    j["t"] = r.t;
    j["mu1"] = MixtureToJson(r.mu1);
    j["mu2"] = MixtureToJson(r.mu2);
    j["br1"] = r.br1;
    j["br2"] = r.br2;
    j["impr1"] = Rat(r.impr1);
    j["impr2"] = Rat(r.impr2);
    j["exploitability"] = Rat(r.exploitability);
    records.push_back(std::move(j));
  }
  Json result;
  result["type"] = "result";
  result["algorithm"] = "fp";
  result["rounds"] = trace.rounds.size();
  result["first_zero"] = trace.first_zero ? Json(*trace.first_zero) : Json(nullptr);
  result["final_gap"] = trace.rounds.empty()
                            ? Json(nullptr)
                            : Json(FormatRational(trace.rounds.back().exploitability));
  return Lines(WithType(header, "header"), records, result);
}

std::string WriteBrdTrace(const Json& header, const BrdTrace& trace) {
  std::vector<Json> records;
  for (std::size_t t = 0; t < trace.profiles.size(); ++t) {
    Json j;
    j["type"] = "round";
    j["t"] = t;
    j["profile"] = {trace.profiles[t].first, trace.profiles[t].second};
    records.push_back(std::move(j));
  }
  Json result;
  result["type"] = "result";
  result["algorithm"] = "brd";
  result["rounds"] = trace.profiles.empty() ? 0 : trace.profiles.size() - 1;
  result["converged"] = trace.converged;
  result["cycle_start"] = trace.cycle_start ? Json(*trace.cycle_start) : Json(nullptr);
  result["cycle_length"] = trace.cycle_length;
  return Lines(WithType(header, "header"), records, result);
}

TraceFile ParseTrace(std::string_view text) {
  TraceFile file;
  std::istringstream in{std::string(text)};
  std::string line;
  int number = 0;
  bool have_header = false;
  bool have_result = false;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    Json j = Json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("type")) {
      throw Error(ErrorCode::kMalformed, "trace line " + std::to_string(number) + " is not a record");
    }
    const std::string type = j["type"].get<std::string>();
    if (!have_header) {
      if (type != "header") throw Error(ErrorCode::kMalformed, "trace does not start with a header");
      file.header = std::move(j);
      have_header = true;
    } else if (have_result) {
      throw Error(ErrorCode::kMalformed, "trace has records after the result");
    } else if (type == "result") {
      file.result = std::move(j);
      have_result = true;
    } else {
      file.records.push_back(std::move(j));
    }
  }
  if (!have_header || !have_result) {
    throw Error(ErrorCode::kMalformed, "trace lacks a header or result record");
  }
  return file;
}

std::vector<IterationRecord> TraceIterations(const TraceFile& file) {
  std::vector<IterationRecord> out;
  for (const Json& j : file.records) {
    if (j.at("type") == "iteration") out.push_back(IterationFromJson(j));
  }
  return out;
}

}  // namespace dolab
