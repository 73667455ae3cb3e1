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

#ifndef FEDATA_ORACLE_H_
#define FEDATA_ORACLE_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fedata/hex.h"
#include "fedata/manifest.h"
#include "fedata/planner.h"

namespace fedata {

// Identity of an execution path: the index (among input-consuming
// conditions, in bug-path order) of the first condition that fails, or BUG
// when none does. A manifest with c conditions has exactly c + 1 of these.
class PathId {
 public:
  constexpr PathId() = default;
  static constexpr PathId Bug() { return PathId(-1); }
  static constexpr PathId FailedAt(int index) { return PathId(index); }

  constexpr bool is_bug() const { return value_ < 0; }
  constexpr int index() const { return value_; }

  // Dense slot in [0, c]: failed conditions first, BUG last.
  constexpr std::size_t Slot(int c) const {
    return static_cast<std::size_t>(is_bug() ? c : value_);
  }

  std::string ToString() const;

  constexpr auto operator<=>(const PathId&) const = default;

 private:
  constexpr explicit PathId(int value) : value_(value) {}
  int value_ = -1;
};

struct Verdict {
  PathId path;
  bool triggers_bug = false;
  std::size_t consumed_bytes = 0;  // total width of windows evaluated
};

// Predicate of one condition over its window. Missing bytes must already be
// zero-filled by the caller; a checksum window of the wrong length fails.
bool ConditionHolds(const Check& check, std::span<const std::uint8_t> window);

// Precompiled manifest model; Evaluate performs no allocation.
class Oracle {
 public:
  explicit Oracle(const Manifest& manifest);

  Verdict Evaluate(std::span<const std::uint8_t> input) const;

  int condition_count() const { return static_cast<int>(conditions_.size()); }
  std::size_t input_len() const { return input_len_; }

 private:
  enum class Kind : std::uint8_t { kLess, kGreater, kMagic, kChecksum };
  struct Compiled {
    Kind kind;
    std::uint8_t threshold;
    std::uint32_t offset;
    std::uint32_t width;
    std::uint32_t magic_begin;  // into magic_bytes_
    std::int32_t modulus;
    std::int32_t residue;
  };

  std::vector<Compiled> conditions_;
  Bytes magic_bytes_;
  std::size_t input_len_ = 0;
};

Verdict Evaluate(const Manifest& manifest, std::span<const std::uint8_t> input);

// Number of reachable path ids, c + 1. Throws Error{kDegenerateCondition} if
// some condition can never hold or can never fail over its window.
int CountFeasiblePaths(const Manifest& manifest);

struct PathOutcome {
  PathId path;
  bool triggers_bug = false;
  Bytes input;  // a concrete input realizing the outcome
};

// Builds one concrete input per outcome (pass the first i conditions, fail
// condition i; and pass all) and confirms each through Evaluate.
std::vector<PathOutcome> EnumeratePathOutcomes(const Manifest& manifest);

struct TriageResult {
  int bug_count = 0;                   // 0 or 1
  std::vector<std::size_t> triggering;  // indices into the crash list
};

TriageResult TriageCrashes(const Manifest& manifest,
                           std::span<const Bytes> crashing_inputs);

}  // namespace fedata

#endif  // FEDATA_ORACLE_H_
