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

#include "fedata/oracle.h"

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "fedata/error.h"

namespace fedata {
namespace {

[[noreturn]] void Degenerate(std::size_t index, const std::string& why) {
  throw Error(ErrorCode::kDegenerateCondition,
              "condition " + std::to_string(index) + " " + why);
}

// A window satisfying `check`, or nullopt when the satisfying set is empty.
std::optional<Bytes> SatisfyingWindow(const Check& check) {
  if (const auto* n = std::get_if<NormalCheck>(&check)) {
    if (!NormalIsFeasible(*n)) return std::nullopt;
    return Bytes{static_cast<std::uint8_t>(n->op == CompareOp::kGreater ? 255 : 0)};
  }
  if (const auto* m = std::get_if<MagicCheck>(&check)) {
    if (m->bytes.empty()) return std::nullopt;
    return m->bytes;
  }
  const auto& params = std::get<ChecksumCheck>(check).params;
  if (params.length < 1 || params.modulus < 2 || params.residue < 0 ||
      params.residue >= params.modulus ||
      params.residue > 255LL * params.length) {
    return std::nullopt;
  }
  Bytes block(static_cast<std::size_t>(params.length), 0);
  int remaining = params.residue;
  for (std::uint8_t& b : block) {
    b = static_cast<std::uint8_t>(std::min(remaining, 255));
    remaining -= b;
  }
  return block;
}

// A window of the same width falsifying `check`, or nullopt.
std::optional<Bytes> FalsifyingWindow(const Check& check) {
  if (const auto* n = std::get_if<NormalCheck>(&check)) {
    // x > t fails at 0; x < t fails at 255.
    const std::uint8_t value = n->op == CompareOp::kGreater ? 0 : 255;
    if (ConditionHolds(check, std::span(&value, 1))) return std::nullopt;
    return Bytes{value};
  }
  if (const auto* m = std::get_if<MagicCheck>(&check)) {
    if (m->bytes.empty()) return std::nullopt;
    Bytes flipped = m->bytes;
    flipped[0] ^= 0xff;
    return flipped;
  }
  auto block = SatisfyingWindow(check);
  if (!block) {
    return Bytes(static_cast<std::size_t>(
        std::max(std::get<ChecksumCheck>(check).params.length, 0)), 0);
  }
  // Shifting the sum by one changes its residue because modulus >= 2.
  std::uint8_t& first = (*block)[0];
  first = first < 255 ? first + 1 : first - 1;
  if (ConditionHolds(check, *block)) return std::nullopt;
  return block;
}

void Place(Bytes& input, const InputWindow& window, const Bytes& bytes) {
  std::copy(bytes.begin(), bytes.end(),
            input.begin() + static_cast<std::ptrdiff_t>(window.offset));
}

}  // namespace

std::string PathId::ToString() const {
  return is_bug() ? "BUG" : std::to_string(value_);
}

bool ConditionHolds(const Check& check, std::span<const std::uint8_t> window) {
  if (const auto* n = std::get_if<NormalCheck>(&check)) {
    if (window.empty()) return false;
    return n->op == CompareOp::kGreater ? window[0] > n->threshold
                                        : window[0] < n->threshold;
  }
  if (const auto* m = std::get_if<MagicCheck>(&check)) {
    return std::equal(window.begin(), window.end(), m->bytes.begin(),
                      m->bytes.end());
  }
  if (const auto* k = std::get_if<ChecksumCheck>(&check)) {
    if (window.size() != static_cast<std::size_t>(k->params.length)) return false;
    long sum = 0;
    for (std::uint8_t b : window) sum += b;
    return sum % k->params.modulus == k->params.residue;
  }
  return true;
}

Oracle::Oracle(const Manifest& manifest) : input_len_(manifest.input_len) {
  ValidateManifest(manifest);
  for (const ConditionSpec& cond : manifest.conditions) {
    if (!cond.ConsumesInput()) continue;
    Compiled compiled{};
    compiled.offset = static_cast<std::uint32_t>(cond.window->offset);
    compiled.width = static_cast<std::uint32_t>(cond.window->width);
    if (const auto* n = std::get_if<NormalCheck>(&cond.check)) {
      compiled.kind = n->op == CompareOp::kLess ? Kind::kLess : Kind::kGreater;
      compiled.threshold = n->threshold;
    } else if (const auto* m = std::get_if<MagicCheck>(&cond.check)) {
      compiled.kind = Kind::kMagic;
      compiled.magic_begin = static_cast<std::uint32_t>(magic_bytes_.size());
      magic_bytes_.insert(magic_bytes_.end(), m->bytes.begin(), m->bytes.end());
    } else {
      const auto& params = std::get<ChecksumCheck>(cond.check).params;
      compiled.kind = Kind::kChecksum;
      compiled.modulus = params.modulus;
      compiled.residue = params.residue;
    }
    conditions_.push_back(compiled);
  }
}

Verdict Oracle::Evaluate(std::span<const std::uint8_t> input) const {
  // Inputs shorter than input_len read as zero-padded; surplus is ignored.
  const auto at = [&input](std::size_t i) -> std::uint8_t {
    return i < input.size() ? input[i] : 0;
  };
  Verdict verdict;
  for (std::size_t i = 0; i < conditions_.size(); ++i) {
    const Compiled& c = conditions_[i];
    verdict.consumed_bytes += c.width;
    bool holds = false;
    switch (c.kind) {
      case Kind::kLess:
        holds = at(c.offset) < c.threshold;
        break;
      case Kind::kGreater:
        holds = at(c.offset) > c.threshold;
        break;
      case Kind::kMagic:
        holds = true;
        for (std::uint32_t j = 0; j < c.width && holds; ++j) {
          holds = at(c.offset + j) == magic_bytes_[c.magic_begin + j];
        }
        break;
      case Kind::kChecksum: {
        long sum = 0;
        for (std::uint32_t j = 0; j < c.width; ++j) sum += at(c.offset + j);
        holds = sum % c.modulus == c.residue;
        break;
      }
    }
    if (!holds) {
      verdict.path = PathId::FailedAt(static_cast<int>(i));
      verdict.triggers_bug = false;
      return verdict;
    }
  }
  verdict.path = PathId::Bug();
  verdict.triggers_bug = true;
  return verdict;
}

Verdict Evaluate(const Manifest& manifest, std::span<const std::uint8_t> input) {
  return Oracle(manifest).Evaluate(input);
}

std::vector<PathOutcome> EnumeratePathOutcomes(const Manifest& manifest) {
  ValidateManifest(manifest);
  std::vector<const ConditionSpec*> consuming;
  for (const ConditionSpec& cond : manifest.conditions) {
    if (cond.ConsumesInput()) consuming.push_back(&cond);
  }
  std::vector<Bytes> pass;
  std::vector<Bytes> fail;
  for (std::size_t i = 0; i < consuming.size(); ++i) {
    auto sat = SatisfyingWindow(consuming[i]->check);
    if (!sat) Degenerate(i, "is unsatisfiable");
    auto unsat = FalsifyingWindow(consuming[i]->check);
    if (!unsat) Degenerate(i, "is a tautology over its window");
    pass.push_back(std::move(*sat));
    fail.push_back(std::move(*unsat));
  }

  const Oracle oracle(manifest);
  std::vector<PathOutcome> outcomes;
  Bytes input(manifest.input_len, 0);
  for (std::size_t i = 0; i <= consuming.size(); ++i) {
    Bytes candidate = input;
    if (i < consuming.size()) Place(candidate, *consuming[i]->window, fail[i]);
    PathOutcome outcome;
    outcome.path = i < consuming.size() ? PathId::FailedAt(static_cast<int>(i))
                                        : PathId::Bug();
    const Verdict verdict = oracle.Evaluate(candidate);
    if (verdict.path != outcome.path) {
      Degenerate(i, "outcome could not be realized");
    }
    outcome.triggers_bug = verdict.triggers_bug;
    outcome.input = std::move(candidate);
    outcomes.push_back(std::move(outcome));
    if (i < consuming.size()) Place(input, *consuming[i]->window, pass[i]);
  }
  return outcomes;
}

int CountFeasiblePaths(const Manifest& manifest) {
  std::set<PathId> distinct;
  for (const PathOutcome& outcome : EnumeratePathOutcomes(manifest)) {
    distinct.insert(outcome.path);
  }
  return static_cast<int>(distinct.size());
}

TriageResult TriageCrashes(const Manifest& manifest,
                           std::span<const Bytes> crashing_inputs) {
  const Oracle oracle(manifest);
  TriageResult result;
  for (std::size_t i = 0; i < crashing_inputs.size(); ++i) {
    if (oracle.Evaluate(crashing_inputs[i]).triggers_bug) {
      result.triggering.push_back(i);
    }
  }
  result.bug_count = result.triggering.empty() ? 0 : 1;
  return result;
}

}  // namespace fedata
