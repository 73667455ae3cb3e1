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

#ifndef FEDATA_SKELETON_H_
#define FEDATA_SKELETON_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "fedata/rng.h"

namespace fedata {

// Structural skeletons of C functions.
//
// Extraction is a token scan with brace tracking. Only semicolons, braces and
// control keywords survive: `else` / `else if` become IF, `for` and
// `do ... while` become WHILE, `switch` / `case` / `default` / `break` are
// dropped and their bodies fold into the enclosing block. Comments, string and
// character literals and preprocessor lines are removed before scanning, so
// macro-heavy code yields degraded skeletons.

enum class SlotKind { kIf, kWhile };

std::string_view SlotKindName(SlotKind kind);

struct ControlSlot {
  SlotKind kind = SlotKind::kIf;
  int depth = 0;  // 0 for slots directly in the function body
  std::vector<ControlSlot> children;

  bool operator==(const ControlSlot&) const = default;
};

struct Param {
  std::string type;
  std::string name;

  bool operator==(const Param&) const = default;
};

struct Signature {
  std::string return_type;
  std::vector<Param> params;

  bool operator==(const Signature&) const = default;
};

inline constexpr std::array<std::string_view, 6> kBasicTypes = {
    "int", "float", "double", "char", "long", "short"};

struct FunctionSkeleton {
  std::string name;
  int statement_count = 0;
  std::vector<ControlSlot> slots;
  int max_nested_if = 0;
  std::vector<std::string> callees;  // sorted, unique
  Signature signature;

  bool operator==(const FunctionSkeleton&) const = default;
};

// One skeleton per top-level function definition, in source order.
// Signatures are already substituted to basic types; the generator for each
// function is seeded from `type_seed` and the function name.
// Throws Error{kUnbalancedBraces} or Error{kEmptyUnit}.
std::vector<FunctionSkeleton> ExtractSkeletons(std::string_view source,
                                               std::uint64_t type_seed = 0);

// Number of IF nodes on the deepest IF chain of `slots`.
int MaxNestedIf(const std::vector<ControlSlot>& slots);

// Child indices from the function body down to the leaf of the first
// root-to-leaf chain carrying MaxNestedIf IF nodes. Empty when there are no
// slots.
std::vector<std::size_t> DeepestIfChain(const std::vector<ControlSlot>& slots);

// Parses a C declaration such as "char* f(int* p)" into name + signature,
// without any substitution.
std::pair<std::string, Signature> ParseDeclaration(std::string_view decl);

bool IsBasicType(std::string_view type);

// Replaces every pointer, array or otherwise non-basic type by a uniformly
// drawn member of kBasicTypes. Basic types are canonicalized
// ("unsigned int" -> "int"). A lone `void` parameter list becomes empty.
Signature SubstituteSignature(const Signature& original, Rng& rng);

// "int f(float p)".
std::string FormatSignature(std::string_view name, const Signature& sig);

struct TranslationUnit {
  std::string path;  // relative to the ingest root
  std::vector<FunctionSkeleton> functions;
};

// {"unit": ..., "functions": [{name, statements, slots, max_nested_if,
// callees, signature}]}
std::string SkeletonsToJson(const TranslationUnit& unit);
TranslationUnit SkeletonsFromJson(std::string_view json);

// Extracts every .c/.h file under `root` (sorted by path). Files without
// function definitions are skipped; unbalanced files are reported through
// `skipped` when non-null.
std::vector<TranslationUnit> IngestDirectory(
    const std::filesystem::path& root, std::uint64_t type_seed = 0,
    std::vector<std::string>* skipped = nullptr);

}  // namespace fedata

#endif  // FEDATA_SKELETON_H_
