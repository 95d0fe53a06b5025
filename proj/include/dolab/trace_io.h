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

#ifndef DOLAB_TRACE_IO_H_
#define DOLAB_TRACE_IO_H_

#include <string>
#include <string_view>
#include <vector>

#include "dolab/dynamics.h"
#include "json.hpp"

namespace dolab {

using Json = nlohmann::json;

// A trace file is JSON lines: one "header" record, one record per iteration
// (or round) and a final "result" record. Keys are sorted and no clock
// values are written, so equal runs produce identical files.
Json MixtureToJson(const IndexMixture& m);
IndexMixture MixtureFromJson(const Json& j);

Json IterationToJson(const IterationRecord& rec);
IterationRecord IterationFromJson(const Json& j);

Json RunResultToJson(const RunTrace& trace);

std::string WriteRunTrace(const Json& header, const RunTrace& trace);
std::string WriteFpTrace(const Json& header, const FpTrace& trace);
std::string WriteBrdTrace(const Json& header, const BrdTrace& trace);

struct TraceFile {
  Json header;
  std::vector<Json> records;
  Json result;
};

// Throws Error(kMalformed) on a bad line or a missing header or result.
TraceFile ParseTrace(std::string_view text);

// Rebuilds the iteration sequence of a double-oracle trace.
std::vector<IterationRecord> TraceIterations(const TraceFile& file);

}  // namespace dolab

#endif  // DOLAB_TRACE_IO_H_
