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

#include "fedata/fuzzsim.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "json.hpp"

#include "fedata/error.h"

namespace fedata {

std::string_view ScheduleModeName(ScheduleMode mode) {
  switch (mode) {
    case ScheduleMode::kAflConst: return "AFL_CONST";
    case ScheduleMode::kFast: return "FAST";
    case ScheduleMode::kLinear: return "LINEAR";
    case ScheduleMode::kQuad: return "QUAD";
    case ScheduleMode::kFastPlus: return "FAST_PLUS";
    case ScheduleMode::kLinearPlus: return "LINEAR_PLUS";
    case ScheduleMode::kQuadPlus: return "QUAD_PLUS";
  }
  return "";
}

std::optional<ScheduleMode> ParseScheduleMode(std::string_view name) {
  std::string norm;
  for (char ch : name) {
    norm += ch == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  }
  for (ScheduleMode mode : kAllScheduleModes) {
    if (ScheduleModeName(mode) == norm) return mode;
  }
  return std::nullopt;
}

bool IsPlusMode(ScheduleMode mode) {
  return mode == ScheduleMode::kFastPlus || mode == ScheduleMode::kLinearPlus ||
         mode == ScheduleMode::kQuadPlus;
}

void ScheduleParams::Validate() const {
  if (alpha == 0 || !(beta > 0) || lower_l == 0 || lower_l > upper_m) {
    throw Error(ErrorCode::kInvalidConfig,
                "schedule requires alpha > 0, beta > 0 and 0 < L <= M");
  }
}

std::uint64_t Energy(const ScheduleParams& params, std::uint64_t s,
                     std::uint64_t f) {
  if (params.mode == ScheduleMode::kAflConst) return params.alpha;
  const double sd = static_cast<double>(s);
  double g = 0;
  switch (params.mode) {
    case ScheduleMode::kFast:
    case ScheduleMode::kFastPlus:
      g = std::exp2(sd);  // inf past 2^1023, which the clamp absorbs
      break;
    case ScheduleMode::kLinear:
    case ScheduleMode::kLinearPlus:
      g = sd;
      break;
    default:
      g = sd * sd;
      break;
  }
  const double fd = static_cast<double>(std::max<std::uint64_t>(f, 1));
  const double raw = static_cast<double>(params.alpha) * g / (params.beta * fd);
  const double clamped = std::min(raw, static_cast<double>(params.upper_m));
  const auto base = static_cast<std::uint64_t>(std::floor(clamped));
  return IsPlusMode(params.mode) ? std::max(base, params.lower_l) : base;
}

namespace {

void MutateInto(const Bytes& seed, Rng& rng, int max_mutations, Bytes& out) {
  out = seed;
  if (out.empty()) return;
  const auto n = rng.Between(1, std::max(1, max_mutations));
  for (std::int64_t i = 0; i < n; ++i) {
    out[rng.Below(out.size())] = rng.Byte();
  }
}

}  // namespace

Bytes Mutate(const Bytes& seed, Rng& rng, int max_mutations) {
  Bytes out;
  MutateInto(seed, rng, max_mutations, out);
  return out;
}

std::uint64_t PathStats::Total() const {
  std::uint64_t total = 0;
  for (std::uint64_t v : f_) total += v;
  return total;
}

CampaignMetrics RunCampaign(const Manifest& manifest,
                            const CampaignOptions& options) {
  options.schedule.Validate();
  if (options.max_mutations < 1) {
    throw Error(ErrorCode::kInvalidConfig, "max_mutations must be >= 1");
  }
  const Oracle oracle(manifest);
  const int c = oracle.condition_count();
  Rng rng(options.seed);
  PathStats stats(c);
  std::vector<bool> seen(static_cast<std::size_t>(c) + 1, false);
  std::vector<SeedState> queue;
  CampaignMetrics metrics;

  auto execute = [&](const Bytes& input) {
    const Verdict v = oracle.Evaluate(input);
    ++metrics.total_execs;
    stats.Hit(v.path);
    const bool fresh = !seen[v.path.Slot(c)];
    if (fresh) {
      seen[v.path.Slot(c)] = true;
      ++metrics.paths_found;
    }
    if (v.triggers_bug) {
      metrics.bug_found_at_exec = metrics.total_execs;
    } else if (fresh) {
      queue.push_back({input, v.path, 0});
    }
    return v.triggers_bug;
  };

  Bytes starter(options.starter.begin(), options.starter.end());
  starter.resize(manifest.input_len, 0);
  if (execute(starter) || queue.empty()) return metrics;

  const std::uint64_t max_execs = options.budget.max_execs;
  Bytes child;
  bool done = false;
  while (!done && metrics.cycles_completed < options.budget.max_cycles &&
         metrics.total_execs < max_execs) {
    std::uint64_t cycle_execs = 0;
    bool full_cycle = true;
    for (std::size_t i = 0; i < queue.size() && !done; ++i) {
      const std::uint64_t energy =
          Energy(options.schedule, queue[i].s, stats.f(queue[i].path));
      if (energy >= 1 || options.selection_rule == SelectionRule::kCountEvery) {
        ++queue[i].s;
      }
      for (std::uint64_t j = 0; j < energy; ++j) {
        if (metrics.total_execs >= max_execs) {
          done = true;
          full_cycle = false;
          break;
        }
        MutateInto(queue[i].input, rng, options.max_mutations, child);
        ++cycle_execs;
        if (execute(child)) {
          done = true;
          full_cycle = false;
          break;
        }
      }
    }
    if (full_cycle) ++metrics.cycles_completed;
    metrics.zero_input_cycle_streak =
        cycle_execs == 0 ? metrics.zero_input_cycle_streak + 1 : 0;
    metrics.max_zero_streak =
        std::max(metrics.max_zero_streak, metrics.zero_input_cycle_streak);
    metrics.rows.push_back({metrics.rows.size() + 1, cycle_execs,
                            metrics.total_execs, queue.size(),
                            metrics.paths_found,
                            metrics.bug_found_at_exec.has_value(),
                            metrics.zero_input_cycle_streak});
    if (DetectCycleExplosion(metrics, options.explosion_threshold)) {
      metrics.cycle_explosion = true;
      if (options.stop_on_explosion) break;
    }
  }
  return metrics;
}

bool DetectCycleExplosion(const CampaignMetrics& metrics,
                          std::uint64_t threshold) {
  return metrics.zero_input_cycle_streak >= threshold;
}

std::string CycleLogCsv(const CampaignMetrics& metrics) {
  std::ostringstream out;
  out << "cycle,execs_cycle,execs_total,queue_len,paths_found,bug_found,zero_streak\n";
  for (const CycleRow& r : metrics.rows) {
    out << r.cycle << ',' << r.execs_cycle << ',' << r.execs_total << ','
        << r.queue_len << ',' << r.paths_found << ',' << (r.bug_found ? 1 : 0)
        << ',' << r.zero_streak << '\n';
  }
  return out.str();
}

std::string CampaignSummaryJson(const CampaignMetrics& metrics,
                                const CampaignOptions& options) {
  nlohmann::ordered_json j;
  j["mode"] = ScheduleModeName(options.schedule.mode);
  j["seed"] = options.seed;
  j["total_execs"] = metrics.total_execs;
  j["cycles"] = metrics.cycles_completed;
  j["paths"] = metrics.paths_found;
  j["bug_found_at_exec"] = metrics.bug_found_at_exec
                               ? nlohmann::ordered_json(*metrics.bug_found_at_exec)
                               : nlohmann::ordered_json(nullptr);
  j["cycle_explosion"] = metrics.cycle_explosion;
  return j.dump(2) + "\n";
}

}  // namespace fedata
