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

#ifndef FEDATA_MANIFEST_H_
#define FEDATA_MANIFEST_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "fedata/hex.h"
#include "fedata/planner.h"

namespace fedata {

inline constexpr int kManifestVersion = 1;

struct BugLocation {
  int cwe = 761;
  std::string function;
  int line = 0;  // 1-based line of the key line in the emitted source

  bool operator==(const BugLocation&) const = default;
};

struct FcgSummary {
  std::size_t nodes = 0;
  std::size_t edges = 0;

  bool operator==(const FcgSummary&) const = default;
};

// Ground truth for one generated program. Sufficient on its own to decide
// whether any input reaches the planted bug.
struct Manifest {
  int version = kManifestVersion;
  std::uint64_t seed = 0;
  int p = 1;
  int c = 0;
  int m = 0;
  int k = 0;
  BugLocation bug;
  std::vector<ConditionSpec> conditions;
  Bytes witness;
  std::size_t input_len = 0;
  FcgSummary fcg;

  bool operator==(const Manifest&) const = default;
};

// Byte-exact UTF-8 JSON, keys in the documented order, two-space indent,
// trailing newline.
std::string SerializeManifest(const Manifest& manifest);

// Throws Error{kMalformedManifest} on syntax or schema violations, including
// p != c + 1, feature counts that disagree with the condition list,
// overlapping or out-of-range windows, and a witness of the wrong length.
Manifest ParseManifest(std::string_view json);

void ValidateManifest(const Manifest& manifest);

Manifest LoadManifest(const std::filesystem::path& path);
void SaveManifest(const Manifest& manifest, const std::filesystem::path& path);

}  // namespace fedata

#endif  // FEDATA_MANIFEST_H_
