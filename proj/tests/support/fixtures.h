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

#ifndef FEDATA_TESTS_SUPPORT_FIXTURES_H_
#define FEDATA_TESTS_SUPPORT_FIXTURES_H_

#include <string>
#include <utility>

#include "fedata/manifest.h"

namespace fedata::testing {

inline ConditionSpec NormalAt(std::string fn, int slot, CompareOp op,
                              std::uint8_t threshold, std::size_t offset) {
  return {{std::move(fn), slot}, NormalCheck{op, threshold}, InputWindow{offset, 1}};
}

// Three single-byte conditions: b0 > 'a', b1 < 'b', b2 > 'c'.
inline Manifest ThreeConditionManifest() {
  Manifest m;
  m.seed = 1;
  m.p = 4;
  m.c = 3;
  m.bug = {761, "__fedata_bug", 10};
  m.conditions = {NormalAt("main", 0, CompareOp::kGreater, 'a', 0),
                  NormalAt("main", 1, CompareOp::kLess, 'b', 1),
                  NormalAt("main", 2, CompareOp::kGreater, 'c', 2)};
  m.witness = {'b', 'a', 'd'};
  m.input_len = 3;
  m.fcg = {2, 1};
  return m;
}

// One condition per entry of `checks`, windows packed in order.
inline Manifest ManifestOf(std::vector<Check> checks, Bytes witness) {
  Manifest m;
  m.bug = {761, "__fedata_bug", 1};
  int slot = 0;
  for (Check& check : checks) {
    std::size_t width = 1;
    if (const auto* mg = std::get_if<MagicCheck>(&check)) width = mg->bytes.size();
    if (const auto* ck = std::get_if<ChecksumCheck>(&check)) {
      width = static_cast<std::size_t>(ck->params.length);
      ++m.k;
    }
    if (std::holds_alternative<MagicCheck>(check)) ++m.m;
    m.conditions.push_back({{"main", slot++}, std::move(check), InputWindow{m.input_len, width}});
    m.input_len += width;
  }
  m.c = static_cast<int>(m.conditions.size());
  m.p = m.c + 1;
  m.witness = std::move(witness);
  m.fcg = {2, 1};
  return m;
}

}  // namespace fedata::testing

#endif  // FEDATA_TESTS_SUPPORT_FIXTURES_H_
