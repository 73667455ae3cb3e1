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

// fedata: generate synthetic vulnerable C programs and simulate greybox
// fuzzing campaigns against their ground-truth models.

#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fedata/error.h"
#include "fedata/fuzzsim.h"
#include "fedata/harness.h"
#include "fedata/manifest.h"
#include "fedata/oracle.h"
#include "fedata/skeleton.h"

namespace {

namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitBug = 2;

fedata::Bytes ReadBytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw fedata::Error(fedata::ErrorCode::kIo, "cannot read " + path.string());
  return fedata::Bytes(std::istreambuf_iterator<char>(in), {});
}

std::string ReadText(const fs::path& path) {
  const fedata::Bytes bytes = ReadBytes(path);
  return std::string(bytes.begin(), bytes.end());
}

void WriteText(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw fedata::Error(fedata::ErrorCode::kIo, "cannot write " + path.string());
}

struct IngestArgs {
  std::string src;
  std::string out;
  std::uint64_t type_seed = 0;
};

int RunIngest(const IngestArgs& args) {
  std::vector<std::string> skipped;
  const auto units = fedata::IngestDirectory(args.src, args.type_seed, &skipped);
  for (const std::string& file : skipped) {
    std::cerr << "skipped (unbalanced braces): " << file << "\n";
  }
  if (args.out.empty()) {
    for (const auto& unit : units) std::cout << fedata::SkeletonsToJson(unit);
  } else {
    fedata::WriteSkeletonSet(units, args.out);
    std::cout << units.size() << " translation units -> " << args.out << "\n";
  }
  return kExitOk;
}

struct GenArgs {
  std::string plan;
  std::string out;
  std::string pool;
};

fedata::ExperimentPlan LoadPlanWithOverrides(const std::string& plan_path,
                                             const std::string& out,
                                             const std::string& pool) {
  fedata::ExperimentPlan plan = fedata::LoadExperimentPlan(plan_path);
  if (!out.empty()) plan.out = out;
  if (!pool.empty()) plan.pool = pool;
  return plan;
}

int RunGen(const GenArgs& args) {
  const fedata::ExperimentPlan plan = LoadPlanWithOverrides(args.plan, args.out, args.pool);
  if (plan.out.empty()) throw CLI::ValidationError("--out", "no output directory");
  const auto programs = fedata::GenBatch(plan, fedata::LoadPool(plan.pool));
  fedata::WriteBatch(programs, plan.out);
  std::cout << programs.size() << " programs -> " << plan.out.string() << "\n";
  return kExitOk;
}

struct TriageArgs {
  std::string manifest;
  std::string input;
};

int RunTriage(const TriageArgs& args) {
  const fedata::Manifest manifest = fedata::LoadManifest(args.manifest);
  const fedata::Verdict verdict = fedata::Evaluate(manifest, ReadBytes(args.input));
  std::cout << "path=" << verdict.path.ToString()
            << " bug=" << (verdict.triggers_bug ? 1 : 0) << "\n";
  return verdict.triggers_bug ? kExitBug : kExitOk;
}

struct FuzzArgs {
  std::string manifest;
  std::string schedule = "FAST";
  fedata::CampaignOptions options;
  std::string log;
  bool count_every = false;
};

int RunFuzz(FuzzArgs args) {
  const auto mode = fedata::ParseScheduleMode(args.schedule);
  if (!mode) throw CLI::ValidationError("--schedule", "unknown mode " + args.schedule);
  args.options.schedule.mode = *mode;
  if (args.count_every) args.options.selection_rule = fedata::SelectionRule::kCountEvery;
  const fedata::Manifest manifest = fedata::LoadManifest(args.manifest);
  const fedata::CampaignMetrics metrics = fedata::RunCampaign(manifest, args.options);
  if (!args.log.empty()) WriteText(args.log, fedata::CycleLogCsv(metrics));
  std::cout << fedata::CampaignSummaryJson(metrics, args.options);
  return kExitOk;
}

struct MatrixArgs {
  std::string plan;
  std::string out;
  std::size_t workers = 0;
};

int RunMatrixCommand(const MatrixArgs& args) {
  fedata::ExperimentPlan plan = LoadPlanWithOverrides(args.plan, args.out, "");
  if (args.workers) plan.workers = args.workers;
  if (plan.schedules.empty()) throw CLI::ValidationError("--plan", "no schedules");
  const auto corpus = fedata::LoadCorpus(plan.out);
  const auto cells = fedata::RunMatrix(plan, corpus);
  const fs::path csv = plan.out / "matrix.csv";
  WriteText(csv, fedata::MatrixCsv(cells));
  std::cout << cells.size() << " cells -> " << csv.string() << "\n";
  return kExitOk;
}

struct ReportArgs {
  std::string csv;
  std::string out;
};

int RunReport(const ReportArgs& args) {
  const auto rows = fedata::ParseMatrixCsv(ReadText(args.csv));
  const auto series = fedata::BuildReport(rows);
  const fs::path out =
      args.out.empty() ? fs::path(args.csv).parent_path() / "report" : fs::path(args.out);
  fedata::WriteReport(series, out);
  std::cout << series.size() << " series -> " << out.string() << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fedata: synthetic vulnerable programs and fuzzing simulation"};
  app.require_subcommand(1);

  IngestArgs ingest;
  auto* ingest_cmd = app.add_subcommand("ingest", "Extract control-flow skeletons");
  ingest_cmd->add_option("srcdir", ingest.src, "C source tree")->required()->check(CLI::ExistingDirectory);
  ingest_cmd->add_option("--out", ingest.out, "Skeleton set directory (stdout if absent)");
  ingest_cmd->add_option("--type-seed", ingest.type_seed, "Seed for signature substitution");

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate programs and manifests");
  gen_cmd->add_option("--plan", gen.plan, "Experiment plan JSON")->required()->check(CLI::ExistingFile);
  gen_cmd->add_option("--out", gen.out, "Output directory (overrides plan)");
  gen_cmd->add_option("--pool", gen.pool, "Skeleton pool directory (overrides plan)");

  TriageArgs triage;
  auto* triage_cmd = app.add_subcommand("triage", "Classify an input against a manifest");
  triage_cmd->add_option("--manifest", triage.manifest)->required()->check(CLI::ExistingFile);
  triage_cmd->add_option("--input", triage.input)->required()->check(CLI::ExistingFile);

  FuzzArgs fuzz;
  auto* fuzz_cmd = app.add_subcommand("fuzz", "Simulate one campaign");
  fuzz_cmd->add_option("--manifest", fuzz.manifest)->required()->check(CLI::ExistingFile);
  fuzz_cmd->add_option("--schedule", fuzz.schedule, "AFL_CONST, FAST, LINEAR, QUAD or *_PLUS");
  fuzz_cmd->add_option("--alpha", fuzz.options.schedule.alpha);
  fuzz_cmd->add_option("--beta", fuzz.options.schedule.beta);
  fuzz_cmd->add_option("--upper-m", fuzz.options.schedule.upper_m);
  fuzz_cmd->add_option("--lower-l", fuzz.options.schedule.lower_l);
  fuzz_cmd->add_option("--max-execs", fuzz.options.budget.max_execs);
  fuzz_cmd->add_option("--max-cycles", fuzz.options.budget.max_cycles);
  fuzz_cmd->add_option("--seed", fuzz.options.seed);
  fuzz_cmd->add_option("--max-mutations", fuzz.options.max_mutations);
  fuzz_cmd->add_option("--starter", fuzz.options.starter, "Starter seed text");
  fuzz_cmd->add_option("--explosion-threshold", fuzz.options.explosion_threshold);
  fuzz_cmd->add_flag("--count-every-selection", fuzz.count_every,
                     "Increment s on every selection, not only productive ones");
  fuzz_cmd->add_option("--log", fuzz.log, "Per-cycle CSV output");

  MatrixArgs matrix;
  auto* matrix_cmd = app.add_subcommand("matrix", "Run every program x schedule x trial");
  matrix_cmd->add_option("--plan", matrix.plan)->required()->check(CLI::ExistingFile);
  matrix_cmd->add_option("--out", matrix.out, "Corpus directory (overrides plan)");
  matrix_cmd->add_option("--workers", matrix.workers);

  ReportArgs report;
  auto* report_cmd = app.add_subcommand("report", "Turn a matrix CSV into data series");
  report_cmd->add_option("--csv", report.csv)->required()->check(CLI::ExistingFile);
  report_cmd->add_option("--out", report.out, "Series directory (default: <csv dir>/report)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*ingest_cmd) return RunIngest(ingest);
    if (*gen_cmd) return RunGen(gen);
    if (*triage_cmd) return RunTriage(triage);
    if (*fuzz_cmd) return RunFuzz(fuzz);
    if (*matrix_cmd) return RunMatrixCommand(matrix);
    if (*report_cmd) return RunReport(report);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
