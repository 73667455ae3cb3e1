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

#ifndef FEDATA_CODEGEN_H_
#define FEDATA_CODEGEN_H_

#include <string>
#include <string_view>
#include <vector>

#include "fedata/fcg.h"
#include "fedata/manifest.h"
#include "fedata/planner.h"
#include "fedata/skeleton.h"

namespace fedata {

struct GeneratedProgram {
  std::string program_name;
  std::string source;
  Manifest manifest;
};

// "<skeleton>_<m>_<p>_", e.g. "terminology_0_50_".
std::string ProgramName(std::string_view skeleton, int m, int p);

// C identifier emitted for a graph node. Every function except main and the
// bug node gets an "f_" prefix so skeleton names never clash with libc.
std::string EmittedFunctionName(std::string_view node_id);

Manifest EmitManifest(const BugPathSpec& spec, const FeatureConfig& config,
                      const BugPathSelection& selection,
                      const FcgSummary& fcg_summary);

// Emits a C program for `fcg` (normalized, bug node attached) that realizes
// `spec` along `selection`:
//   - only `if` and `while`; loops run a fixed 1..8 iterations on local
//     counters;
//   - stdin is read once into a zeroed buffer and only bug-path ifs read it,
//     each byte at most once;
//   - every call edge that could reach a bug-path function (or the bug node)
//     other than through the bug path sits under `if (0)`;
//   - one filler statement per skeleton semicolon, arithmetic on locals;
//   - the bug node ends in the CWE-761 fragment.
// Deterministic in its inputs. Throws Error{kEmissionOverflow} when the spec
// names slots the path functions do not have.
GeneratedProgram EmitProgram(const Fcg& fcg, const BugPathSelection& selection,
                             const BugPathSpec& spec,
                             const FeatureConfig& config,
                             std::string_view skeleton_name);

// Skeleton set -> normalize -> attach bug -> select -> plan -> emit, all
// driven by config.seed. Propagates kNoMainFunction / kProgramTooSmall.
GeneratedProgram GenerateProgram(const std::vector<FunctionSkeleton>& skeletons,
                                 std::string_view skeleton_name,
                                 const FeatureConfig& config);

}  // namespace fedata

#endif  // FEDATA_CODEGEN_H_
