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

#ifndef FEDATA_PLANNER_H_
#define FEDATA_PLANNER_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fedata/fcg.h"
#include "fedata/hex.h"
#include "fedata/rng.h"

namespace fedata {

enum class BugKind { kCwe761 };

struct ByteRange {
  int min = 1;
  int max = 3;

  bool operator==(const ByteRange&) const = default;
};

struct ChecksumParams {
  int length = 7;
  int modulus = 8;
  int residue = 3;

  bool operator==(const ChecksumParams&) const = default;
};

// Requested counts of search-hampering features for one program.
// The number of input-related conditions on the bug path is c = p - 1.
struct FeatureConfig {
  std::uint64_t seed = 0;
  int p = 2;  // execution paths
  int m = 0;  // magic values
  int k = 0;  // checksums
  ByteRange magic_len;
  ChecksumParams checksum;
  BugKind bug_kind = BugKind::kCwe761;

  int c() const { return p - 1; }

  // Throws Error{kInvalidConfig}. p = 1 is accepted as the degenerate
  // condition-free program.
  void Validate() const;

  bool operator==(const FeatureConfig&) const = default;
};

enum class CompareOp { kLess, kGreater };

std::string_view CompareOpSymbol(CompareOp op);

struct NormalCheck {
  CompareOp op = CompareOp::kGreater;
  std::uint8_t threshold = 0;

  bool operator==(const NormalCheck&) const = default;
};

struct MagicCheck {
  Bytes bytes;

  bool operator==(const MagicCheck&) const = default;
};

struct ChecksumCheck {
  ChecksumParams params;

  bool operator==(const ChecksumCheck&) const = default;
};

struct AlwaysTrue {
  bool operator==(const AlwaysTrue&) const = default;
};

using Check = std::variant<NormalCheck, MagicCheck, ChecksumCheck, AlwaysTrue>;

std::string_view CheckKindName(const Check& check);

struct SlotRef {
  std::string function;
  int slot = 0;  // index along the function's deepest if chain

  bool operator==(const SlotRef&) const = default;
};

struct InputWindow {
  std::size_t offset = 0;
  std::size_t width = 0;

  bool operator==(const InputWindow&) const = default;
};

struct ConditionSpec {
  SlotRef position;
  Check check;
  std::optional<InputWindow> window;  // absent for AlwaysTrue

  bool ConsumesInput() const { return window.has_value(); }

  bool operator==(const ConditionSpec&) const = default;
};

struct BugPathSpec {
  std::vector<ConditionSpec> conditions;  // bug-path order
  Bytes witness;
  std::size_t total_input_len = 0;

  int InputConditionCount() const;
  int CountOf(std::string_view kind) const;

  bool operator==(const BugPathSpec&) const = default;
};

// Whether some byte satisfies `value op threshold` and some byte does not.
bool NormalIsFeasible(const NormalCheck& check);

ChecksumCheck MakeChecksum(const ChecksumParams& params);

// Lays the c input-consuming conditions onto the first c if-slots of the
// path, magic and checksum positions drawn uniformly among them; surplus
// slots become AlwaysTrue. Windows are packed in path order. The witness is
// built constructively and never equals the all-zero input when c >= 1
// unless the configuration leaves no alternative (all checksums with
// residue 0 and nothing else).
BugPathSpec PlanConditions(const Fcg& fcg, const BugPathSelection& selection,
                           const FeatureConfig& config, Rng& rng);

}  // namespace fedata

#endif  // FEDATA_PLANNER_H_
