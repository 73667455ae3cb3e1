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

#ifndef FEDATA_FUZZSIM_H_
#define FEDATA_FUZZSIM_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fedata/hex.h"
#include "fedata/manifest.h"
#include "fedata/oracle.h"
#include "fedata/rng.h"

namespace fedata {

enum class ScheduleMode {
  kAflConst,
  kFast,
  kLinear,
  kQuad,
  kFastPlus,
  kLinearPlus,
  kQuadPlus,
};

inline constexpr ScheduleMode kAllScheduleModes[] = {
    ScheduleMode::kAflConst,  ScheduleMode::kFast,       ScheduleMode::kLinear,
    ScheduleMode::kQuad,      ScheduleMode::kFastPlus,   ScheduleMode::kLinearPlus,
    ScheduleMode::kQuadPlus};

// "AFL_CONST", "FAST", ..., "QUAD_PLUS".
std::string_view ScheduleModeName(ScheduleMode mode);

// Case-insensitive; '-' and '_' are interchangeable.
std::optional<ScheduleMode> ParseScheduleMode(std::string_view name);

bool IsPlusMode(ScheduleMode mode);

struct ScheduleParams {
  ScheduleMode mode = ScheduleMode::kFast;
  std::uint64_t alpha = 512;
  double beta = 1.0;
  std::uint64_t upper_m = 4096;
  std::uint64_t lower_l = 16;  // PLUS modes only

  // Throws Error{kInvalidConfig} unless alpha > 0, beta > 0, 0 < L <= M.
  void Validate() const;
};

// Number of inputs to generate from a seed chosen s times whose path has been
// exercised f times. Computed as alpha*g(s)/(beta*f) in reals, clamped to M,
// floored, then raised to L in PLUS modes. f = 0 is read as 1.
std::uint64_t Energy(const ScheduleParams& params, std::uint64_t s,
                     std::uint64_t f);

// 1..max_mutations single-byte substitutions at uniform offsets.
Bytes Mutate(const Bytes& seed, Rng& rng, int max_mutations);

enum class SelectionRule {
  kCountProductive,  // s grows only when the seed receives energy >= 1
  kCountEvery,       // s grows on every selection
};

struct SeedState {
  Bytes input;
  PathId path;
  std::uint64_t s = 0;
};

// Per-path execution counts f, indexed by PathId::Slot.
class PathStats {
 public:
  explicit PathStats(int condition_count)
      : c_(condition_count), f_(static_cast<std::size_t>(condition_count) + 1) {}

  std::uint64_t f(PathId path) const { return f_[path.Slot(c_)]; }
  void Hit(PathId path) { ++f_[path.Slot(c_)]; }
  std::uint64_t Total() const;

 private:
  int c_;
  std::vector<std::uint64_t> f_;
};

struct CampaignBudget {
  std::uint64_t max_execs = 1'000'000;
  std::uint64_t max_cycles = 1'000'000;
};

inline constexpr std::string_view kDefaultStarter = "Hello World";

struct CampaignOptions {
  ScheduleParams schedule;
  CampaignBudget budget;
  std::uint64_t seed = 0;
  int max_mutations = 4;
  std::string starter{kDefaultStarter};  // truncated or zero-padded
  SelectionRule selection_rule = SelectionRule::kCountProductive;
  std::uint64_t explosion_threshold = 1000;
  bool stop_on_explosion = true;
};

struct CycleRow {
  std::uint64_t cycle = 0;  // 1-based
  std::uint64_t execs_cycle = 0;
  std::uint64_t execs_total = 0;
  std::size_t queue_len = 0;
  int paths_found = 0;
  bool bug_found = false;
  std::uint64_t zero_streak = 0;

  bool operator==(const CycleRow&) const = default;
};

struct CampaignMetrics {
  std::uint64_t total_execs = 0;
  std::uint64_t cycles_completed = 0;
  int paths_found = 0;
  std::optional<std::uint64_t> bug_found_at_exec;
  std::uint64_t zero_input_cycle_streak = 0;  // at the end of the campaign
  std::uint64_t max_zero_streak = 0;
  bool cycle_explosion = false;
  std::vector<CycleRow> rows;

  bool operator==(const CampaignMetrics&) const = default;
};

// Greybox loop over the manifest model: one starter seed, cycles over the
// queue (seeds found mid-cycle are fuzzed in the same cycle), new paths are
// enqueued, stops on the bug, budget, or explosion.
CampaignMetrics RunCampaign(const Manifest& manifest,
                            const CampaignOptions& options);

bool DetectCycleExplosion(const CampaignMetrics& metrics,
                          std::uint64_t threshold);

// Header plus one line per row.
std::string CycleLogCsv(const CampaignMetrics& metrics);

std::string CampaignSummaryJson(const CampaignMetrics& metrics,
                                const CampaignOptions& options);

}  // namespace fedata

#endif  // FEDATA_FUZZSIM_H_
