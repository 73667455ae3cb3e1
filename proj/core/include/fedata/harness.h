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

#ifndef FEDATA_HARNESS_H_
#define FEDATA_HARNESS_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fedata/codegen.h"
#include "fedata/fuzzsim.h"
#include "fedata/planner.h"
#include "fedata/skeleton.h"

namespace fedata {

// One ingested project: every function of every translation unit.
struct SkeletonSet {
  std::string name;
  std::vector<FunctionSkeleton> functions;
};

// Writes one <unit>.json per translation unit under `out`, flattening unit
// paths ("src/a.c" -> "src__a.c.json").
void WriteSkeletonSet(const std::vector<TranslationUnit>& units,
                      const std::filesystem::path& out);

// Each subdirectory of `pool_dir` holding *.json skeleton documents is one
// set, named after the subdirectory. Sorted by name.
std::vector<SkeletonSet> LoadPool(const std::filesystem::path& pool_dir);

struct CorpusEntry {
  int p = 2;
  int m = 0;
  int k = 0;
  int repetitions = 1;
  ByteRange magic_len;
  ChecksumParams checksum;
};

struct ExperimentPlan {
  std::filesystem::path pool;
  std::vector<CorpusEntry> corpus;
  std::uint64_t seed = 0;
  std::vector<ScheduleParams> schedules;
  CampaignBudget budget;
  int trials = 1;
  std::filesystem::path out;
  std::string starter_seed{kDefaultStarter};
  int max_mutations = 4;
  std::size_t workers = 0;  // 0: hardware concurrency
  bool cycle_logs = false;  // write one cycle CSV per campaign under out/logs

  // Throws Error{kMalformedPlan}.
  void Validate() const;
};

// Relative paths resolve against `base_dir`. Schedules are names or objects
// {mode, alpha, beta, upper_m, lower_l}. Throws Error{kMalformedPlan}.
ExperimentPlan ParseExperimentPlan(std::string_view json,
                                   const std::filesystem::path& base_dir = {});
ExperimentPlan LoadExperimentPlan(const std::filesystem::path& path);

// One program per corpus entry and repetition, in plan order. Seeds derive
// from plan.seed; the skeleton is drawn from the pool and the next ones are
// tried in turn when it cannot host the entry. Program names carry the batch
// index. Throws Error{kPoolExhausted}.
std::vector<GeneratedProgram> GenBatch(const ExperimentPlan& plan,
                                       const std::vector<SkeletonSet>& pool);

// Writes <name>.c and <name>.manifest.json per program plus corpus.json
// listing them. Returns the manifest paths.
std::vector<std::filesystem::path> WriteBatch(
    const std::vector<GeneratedProgram>& programs,
    const std::filesystem::path& out);

struct CorpusItem {
  std::string program;
  std::filesystem::path manifest_path;
  Manifest manifest;
};

// Reads corpus.json from `dir` and loads every listed manifest.
std::vector<CorpusItem> LoadCorpus(const std::filesystem::path& dir);

struct MatrixCell {
  std::string program;
  std::string manifest;
  int p = 0;
  int m = 0;
  int k = 0;
  std::string schedule;
  int trials = 0;
  int bugs_found = 0;
  std::vector<std::uint64_t> execs_to_bug;  // found trials only, trial order
  int explosions = 0;
  std::uint64_t paths_found = 0;  // summed over trials
  std::uint64_t cycles = 0;
  std::uint64_t execs = 0;
};

// Campaign seed of a trial; schedules of one program share trial seeds.
std::uint64_t TrialSeed(std::uint64_t plan_seed, std::string_view program,
                        int trial);

// Every program x schedule x trial campaign on a bounded worker pool.
// Cells are ordered program-major. Deterministic regardless of workers.
std::vector<MatrixCell> RunMatrix(const ExperimentPlan& plan,
                                  const std::vector<CorpusItem>& corpus);

std::string MatrixCsv(const std::vector<MatrixCell>& cells);

// Parsed matrix CSV row; execs-to-bug statistics are absent when no trial
// found the bug.
struct MatrixRow {
  std::string program;
  std::string manifest;
  int p = 0;
  int m = 0;
  int k = 0;
  std::string schedule;
  int trials = 0;
  int bugs_found = 0;
  double bug_rate = 0;
  std::optional<double> median_execs_to_bug;
  std::optional<double> mean_execs_to_bug;
  int explosions = 0;
  double explosion_rate = 0;
  double mean_paths_found = 0;
  double mean_cycles = 0;
  double mean_execs_per_cycle = 0;
};

// Throws Error{kMalformedCsv}. Empty text parses to no rows.
std::vector<MatrixRow> ParseMatrixCsv(std::string_view csv);

struct ReportSeries {
  std::string name;  // file stem
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

// bugs_by_paths: one row per (p, schedule); execs_to_bug and cycles: one row
// per cell. No rows yields no series.
std::vector<ReportSeries> BuildReport(const std::vector<MatrixRow>& rows);

// Whitespace-separated <name>.dat files with a '#' header line.
void WriteReport(const std::vector<ReportSeries>& series,
                 const std::filesystem::path& dir);

double Median(std::vector<double> values);

}  // namespace fedata

#endif  // FEDATA_HARNESS_H_
