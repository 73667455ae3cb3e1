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

#include "fedata/planner.h"

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "fedata/error.h"

namespace fedata {
namespace {

constexpr int kThresholdLow = 32;
constexpr int kThresholdHigh = 223;
constexpr int kMaxMagicLen = 64;
constexpr int kMaxPlanAttempts = 64;

void Require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::kInvalidConfig, what);
}

NormalCheck DrawNormal(Rng& rng) {
  for (;;) {
    NormalCheck check;
    check.op = rng.Below(2) == 0 ? CompareOp::kLess : CompareOp::kGreater;
    check.threshold =
        static_cast<std::uint8_t>(rng.Between(kThresholdLow, kThresholdHigh));
    if (NormalIsFeasible(check)) return check;
  }
}

std::uint8_t SatisfyNormal(const NormalCheck& check, Rng& rng) {
  if (check.op == CompareOp::kGreater) {
    return static_cast<std::uint8_t>(rng.Between(check.threshold + 1, 255));
  }
  return static_cast<std::uint8_t>(rng.Between(0, check.threshold - 1));
}

// A block of `length` bytes whose sum is congruent to residue.
Bytes SatisfyChecksum(const ChecksumParams& params, Rng& rng) {
  const std::int64_t capacity = 255LL * params.length;
  const std::int64_t max_j = (capacity - params.residue) / params.modulus;
  std::int64_t sum = params.residue + params.modulus * rng.Between(0, max_j);
  Bytes block(static_cast<std::size_t>(params.length));
  for (std::size_t i = 0; i < block.size(); ++i) {
    const std::int64_t after = 255LL * static_cast<std::int64_t>(block.size() - 1 - i);
    const std::int64_t lo = std::max<std::int64_t>(0, sum - after);
    const std::int64_t hi = std::min<std::int64_t>(255, sum);
    const std::int64_t b = rng.Between(lo, hi);
    block[i] = static_cast<std::uint8_t>(b);
    sum -= b;
  }
  return block;
}

bool HoldsOnZeros(const Check& check) {
  if (const auto* n = std::get_if<NormalCheck>(&check)) {
    return n->op == CompareOp::kLess ? n->threshold > 0 : false;
  }
  if (const auto* m = std::get_if<MagicCheck>(&check)) {
    return std::all_of(m->bytes.begin(), m->bytes.end(),
                       [](std::uint8_t b) { return b == 0; });
  }
  if (const auto* c = std::get_if<ChecksumCheck>(&check)) {
    return c->params.residue == 0;
  }
  return true;
}

}  // namespace

void FeatureConfig::Validate() const {
  Require(p >= 1, "p must be at least 1");
  Require(m >= 0 && k >= 0, "m and k must be non-negative");
  Require(m + k <= c(), "m + k must not exceed c = p - 1");
  Require(magic_len.min >= 1 && magic_len.min <= magic_len.max &&
              magic_len.max <= kMaxMagicLen,
          "magic_len must satisfy 1 <= min <= max <= 64");
  Require(checksum.length >= 1, "checksum length must be positive");
  Require(checksum.modulus >= 2, "checksum modulus must be at least 2");
  Require(checksum.residue >= 0 && checksum.residue < checksum.modulus,
          "checksum residue must lie in [0, modulus)");
  Require(checksum.residue <= 255LL * checksum.length,
          "checksum residue unreachable with the configured length");
}

std::string_view CompareOpSymbol(CompareOp op) {
  return op == CompareOp::kLess ? "<" : ">";
}

std::string_view CheckKindName(const Check& check) {
  struct Visitor {
    std::string_view operator()(const NormalCheck&) const { return "normal"; }
    std::string_view operator()(const MagicCheck&) const { return "magic"; }
    std::string_view operator()(const ChecksumCheck&) const { return "checksum"; }
    std::string_view operator()(const AlwaysTrue&) const { return "always"; }
  };
  return std::visit(Visitor{}, check);
}

int BugPathSpec::InputConditionCount() const {
  return static_cast<int>(std::count_if(
      conditions.begin(), conditions.end(),
      [](const ConditionSpec& c) { return c.ConsumesInput(); }));
}

int BugPathSpec::CountOf(std::string_view kind) const {
  return static_cast<int>(std::count_if(
      conditions.begin(), conditions.end(),
      [kind](const ConditionSpec& c) { return CheckKindName(c.check) == kind; }));
}

bool NormalIsFeasible(const NormalCheck& check) {
  return check.op == CompareOp::kGreater ? check.threshold < 255
                                         : check.threshold > 0;
}

ChecksumCheck MakeChecksum(const ChecksumParams& params) {
  return ChecksumCheck{params};
}

BugPathSpec PlanConditions(const Fcg& fcg, const BugPathSelection& selection,
                           const FeatureConfig& config, Rng& rng) {
  config.Validate();
  const int c = config.c();
  if (selection.total_weight < c) {
    throw Error(ErrorCode::kProgramTooSmall,
                "bug path weight " + std::to_string(selection.total_weight) +
                    " cannot host " + std::to_string(c) + " conditions");
  }

  std::vector<SlotRef> slots;
  for (std::size_t i = 0; i + 1 < selection.node_sequence.size(); ++i) {
    const std::string& fn = selection.node_sequence[i];
    for (int j = 0; j < fcg.NodeWeight(fn); ++j) slots.push_back({fn, j});
  }

  BugPathSpec spec;
  for (int attempt = 0; attempt < kMaxPlanAttempts; ++attempt) {
    // Positions 0..c-1 get input conditions; pick magic/checksum among them.
    const auto n = static_cast<std::size_t>(c);
    const auto magic = static_cast<std::size_t>(config.m);
    const auto special = magic + static_cast<std::size_t>(config.k);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (std::size_t i = 0; i < special; ++i) {
      std::swap(order[i], order[i + rng.Below(n - i)]);
    }
    std::vector<char> role(n, 'n');
    for (std::size_t i = 0; i < special; ++i) {
      role[order[i]] = i < magic ? 'm' : 'k';
    }

    spec = BugPathSpec{};
    bool zeros_reach_bug = true;
    for (std::size_t i = 0; i < slots.size(); ++i) {
      ConditionSpec cond;
      cond.position = slots[i];
      if (i >= static_cast<std::size_t>(c)) {
        cond.check = AlwaysTrue{};
        spec.conditions.push_back(std::move(cond));
        continue;
      }
      InputWindow window{spec.total_input_len, 0};
      switch (role[i]) {
        case 'm': {
          MagicCheck magic;
          const auto len = rng.Between(config.magic_len.min, config.magic_len.max);
          for (std::int64_t b = 0; b < len; ++b) {
            magic.bytes.push_back(static_cast<std::uint8_t>(rng.Between(1, 255)));
          }
          window.width = magic.bytes.size();
          spec.witness.insert(spec.witness.end(), magic.bytes.begin(),
                              magic.bytes.end());
          cond.check = std::move(magic);
          break;
        }
        case 'k': {
          const ChecksumCheck checksum = MakeChecksum(config.checksum);
          const Bytes block = SatisfyChecksum(checksum.params, rng);
          window.width = block.size();
          spec.witness.insert(spec.witness.end(), block.begin(), block.end());
          cond.check = checksum;
          break;
        }
        default: {
          const NormalCheck normal = DrawNormal(rng);
          if (!NormalIsFeasible(normal)) {
            throw Error(ErrorCode::kInfeasibleThreshold, "empty satisfying set");
          }
          window.width = 1;
          spec.witness.push_back(SatisfyNormal(normal, rng));
          cond.check = normal;
          break;
        }
      }
      zeros_reach_bug = zeros_reach_bug && HoldsOnZeros(cond.check);
      spec.total_input_len += window.width;
      cond.window = window;
      spec.conditions.push_back(std::move(cond));
    }
    if (c == 0 || !zeros_reach_bug) break;
  }
  return spec;
}

}  // namespace fedata
