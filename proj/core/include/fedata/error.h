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

#ifndef FEDATA_ERROR_H_
#define FEDATA_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace fedata {

// Every failure the library reports is an `Error` carrying one of these codes.
enum class ErrorCode {
  // skeleton
  kUnbalancedBraces,
  kEmptyUnit,
  // fcg
  kNoMainFunction,
  kProgramTooSmall,
  kNotAPath,
  // planner
  kInvalidConfig,
  kInfeasibleThreshold,
  // codegen / templates
  kEmissionOverflow,
  kMissingBinding,
  kCompileFailed,
  // oracle
  kMalformedManifest,
  kDegenerateCondition,
  // harness
  kPoolExhausted,
  kMalformedCsv,
  kMalformedPlan,
  kIo,
};

std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace fedata

#endif  // FEDATA_ERROR_H_
