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

#include "dolab/errors.h"

namespace dolab {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformed: return "Malformed";
    case ErrorCode::kNonStochasticTransition: return "NonStochasticTransition";
    case ErrorCode::kCyclicTransitionGraph: return "CyclicTransitionGraph";
    case ErrorCode::kRewardOnNonterminal: return "RewardOnNonterminal";
    case ErrorCode::kDanglingState: return "DanglingState";
    case ErrorCode::kInvalidStartDistribution: return "InvalidStartDistribution";
    case ErrorCode::kZeroSumViolation: return "ZeroSumViolation";
    case ErrorCode::kDomainMismatch: return "DomainMismatch";
    case ErrorCode::kEnumerationCapExceeded: return "EnumerationCapExceeded";
    case ErrorCode::kNotZeroSum: return "NotZeroSum";
    case ErrorCode::kScriptedCandidateSuboptimal: return "ScriptedCandidateSuboptimal";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kInvalidFamily: return "InvalidFamily";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kMissingTraces: return "MissingTraces";
  }
  return "Unknown";
}

}  // namespace dolab
