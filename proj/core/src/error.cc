// Copyright 2026 The fedata Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fedata/error.h"

#include <string>

namespace fedata {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnbalancedBraces: return "UnbalancedBraces";
    case ErrorCode::kEmptyUnit: return "EmptyUnit";
    case ErrorCode::kNoMainFunction: return "NoMainFunction";
    case ErrorCode::kProgramTooSmall: return "ProgramTooSmall";
    case ErrorCode::kNotAPath: return "NotAPath";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kInfeasibleThreshold: return "InfeasibleThreshold";
    case ErrorCode::kEmissionOverflow: return "EmissionOverflow";
    case ErrorCode::kMissingBinding: return "MissingBinding";
    case ErrorCode::kCompileFailed: return "CompileFailed";
    case ErrorCode::kMalformedManifest: return "MalformedManifest";
    case ErrorCode::kDegenerateCondition: return "DegenerateCondition";
    case ErrorCode::kPoolExhausted: return "PoolExhausted";
    case ErrorCode::kMalformedCsv: return "MalformedCsv";
    case ErrorCode::kMalformedPlan: return "MalformedPlan";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
      code_(code) {}

}  // namespace fedata
