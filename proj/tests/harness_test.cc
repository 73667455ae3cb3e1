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

#include "fedata/harness.h"

#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "fedata/error.h"
#include "fedata/oracle.h"
#include "support/synthetic_source.h"

namespace fedata {
namespace {

namespace fs = std::filesystem;
using ::testing::ElementsAre;
using ::testing::HasSubstr;

class TempDir {
 public:
  TempDir() {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    path_ = fs::temp_directory_path() /
            ("fedata_" + std::string(info->test_suite_name()) + "_" + info->name());
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

std::string ReadAll(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void ExpectMalformedPlan(const std::string& json) {
  try {
    ParseExperimentPlan(json);
    ADD_FAILURE() << json;
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMalformedPlan) << json;
  }
}

constexpr const char* kPlan = R"({
  "pool": "pool",
  "out": "sub/../out",
  "seed": 5,
  "corpus": [{"p": 4, "repetitions": 2},
             {"p": 6, "m": 1, "k": 1, "magic_len": {"min": 2, "max": 2},
              "checksum": {"length": 3, "modulus": 5, "residue": 4}}],
  "schedules": ["fast", {"mode": "FAST_PLUS", "lower_l": 8, "alpha": 64}],
  "budget": {"max_execs": 1000, "max_cycles": 50},
  "trials": 2,
  "max_mutations": 2,
  "workers": 3
})";

TEST(ExperimentPlanTest, ParsesEveryField) {
  const ExperimentPlan plan = ParseExperimentPlan(kPlan, "/base");
  EXPECT_EQ(plan.pool, fs::path("/base/pool"));
  EXPECT_EQ(plan.out, fs::path("/base/out"));
  EXPECT_EQ(plan.seed, 5u);
  ASSERT_EQ(plan.corpus.size(), 2u);
  EXPECT_EQ(plan.corpus[0].p, 4);
  EXPECT_EQ(plan.corpus[0].repetitions, 2);
  EXPECT_EQ(plan.corpus[1].magic_len, (ByteRange{2, 2}));
  EXPECT_EQ(plan.corpus[1].checksum, (ChecksumParams{3, 5, 4}));
  ASSERT_EQ(plan.schedules.size(), 2u);
  EXPECT_EQ(plan.schedules[0].mode, ScheduleMode::kFast);
  EXPECT_EQ(plan.schedules[0].alpha, 512u);
  EXPECT_EQ(plan.schedules[1].mode, ScheduleMode::kFastPlus);
  EXPECT_EQ(plan.schedules[1].lower_l, 8u);
  EXPECT_EQ(plan.schedules[1].alpha, 64u);
  EXPECT_EQ(plan.budget.max_execs, 1000u);
  EXPECT_EQ(plan.budget.max_cycles, 50u);
  EXPECT_EQ(plan.trials, 2);
  EXPECT_EQ(plan.max_mutations, 2);
  EXPECT_EQ(plan.workers, 3u);
  EXPECT_EQ(plan.starter_seed, "Hello World");
}

TEST(ExperimentPlanTest, RejectsMalformedPlans) {
  ExpectMalformedPlan("not json");
  ExpectMalformedPlan("[]");
  ExpectMalformedPlan(R"({"corpus": 3})");
  ExpectMalformedPlan(R"({"corpus": [{"p": 2}], "schedules": ["EXPLORE"]})");
  ExpectMalformedPlan(R"({"corpus": [{"p": 2}], "schedules": ["FAST"], "trials": 0})");
  ExpectMalformedPlan(R"({"corpus": [{"p": 2, "m": 2}], "schedules": ["FAST"]})");
  ExpectMalformedPlan(R"({"corpus": [{"p": "x"}], "schedules": ["FAST"]})");
  ExpectMalformedPlan(
      R"({"corpus": [{"p": 2}], "schedules": [{"mode": "FAST_PLUS", "lower_l": 9000}]})");
}

TEST(ExperimentPlanTest, DemoPlanLoads) {
  const ExperimentPlan plan =
      LoadExperimentPlan(FEDATA_SOURCE_DIR "/data/plans/demo.json");
  EXPECT_EQ(plan.corpus.size(), 3u);
  EXPECT_EQ(plan.schedules.size(), 3u);
  EXPECT_EQ(plan.pool.filename(), "pool");
}

TEST(PoolTest, WriteAndLoadSkeletonSets) {
  TempDir tmp;
  TranslationUnit a{"src/a.c", ExtractSkeletons("int main(void) { if (1) { g(); } return 0; }")};
  TranslationUnit b{"b.c", ExtractSkeletons("int g(void) { if (2) { return 1; } return 0; }")};
  WriteSkeletonSet({a, b}, tmp.path() / "zeta");
  WriteSkeletonSet({b}, tmp.path() / "alpha");
  EXPECT_TRUE(fs::exists(tmp.path() / "zeta" / "src__a.c.json"));
  const auto pool = LoadPool(tmp.path());
  ASSERT_EQ(pool.size(), 2u);
  EXPECT_EQ(pool[0].name, "alpha");
  EXPECT_EQ(pool[1].name, "zeta");
  EXPECT_EQ(pool[1].functions.size(), 2u);
}

ExperimentPlan SmallPlan() {
  ExperimentPlan plan = ParseExperimentPlan(kPlan);
  plan.corpus[0].repetitions = 3;
  return plan;
}

TEST(GenBatchTest, OneProgramPerRepetitionWithFeatureCounts) {
  const auto pool = testing::SyntheticPool(1, 3);
  const ExperimentPlan plan = SmallPlan();
  const auto programs = GenBatch(plan, pool);
  ASSERT_EQ(programs.size(), 4u);
  std::set<std::string> names;
  for (std::size_t i = 0; i < programs.size(); ++i) {
    const auto& prog = programs[i];
    const CorpusEntry& entry = plan.corpus[i < 3 ? 0 : 1];
    names.insert(prog.program_name);
    EXPECT_EQ(prog.manifest.p, entry.p);
    EXPECT_EQ(prog.manifest.m, entry.m);
    EXPECT_EQ(prog.manifest.k, entry.k);
    EXPECT_EQ(CountFeasiblePaths(prog.manifest), entry.p);
    EXPECT_TRUE(Evaluate(prog.manifest, prog.manifest.witness).triggers_bug);
    EXPECT_TRUE(prog.program_name.ends_with("_" + std::to_string(i)))
        << prog.program_name;
  }
  EXPECT_EQ(names.size(), programs.size());
}

TEST(GenBatchTest, DeterministicInSeed) {
  const auto pool = testing::SyntheticPool(2, 3);
  ExperimentPlan plan = SmallPlan();
  const auto a = GenBatch(plan, pool);
  const auto b = GenBatch(plan, pool);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].source, b[i].source);
    EXPECT_EQ(a[i].manifest, b[i].manifest);
  }
  plan.seed = 6;
  EXPECT_NE(GenBatch(plan, pool)[0].source, a[0].source);
}

TEST(GenBatchTest, FallsBackAndExhausts) {
  SkeletonSet tiny{"tiny", ExtractSkeletons("int main(void) { return 0; }")};
  auto pool = testing::SyntheticPool(3, 1);
  pool.insert(pool.begin(), tiny);
  ExperimentPlan plan = SmallPlan();
  for (const auto& prog : GenBatch(plan, pool)) {
    EXPECT_FALSE(prog.program_name.starts_with("tiny")) << prog.program_name;
  }
  plan.corpus = {CorpusEntry{}};
  plan.corpus[0].p = 10000;
  try {
    GenBatch(plan, pool);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kPoolExhausted);
  }
  try {
    GenBatch(plan, {});
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kPoolExhausted);
  }
}

TEST(CorpusTest, WriteThenLoad) {
  TempDir tmp;
  const auto programs = GenBatch(SmallPlan(), testing::SyntheticPool(4, 2));
  const auto paths = WriteBatch(programs, tmp.path());
  ASSERT_EQ(paths.size(), programs.size());
  EXPECT_TRUE(fs::exists(tmp.path() / "corpus.json"));
  const auto corpus = LoadCorpus(tmp.path());
  ASSERT_EQ(corpus.size(), programs.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    EXPECT_EQ(corpus[i].program, programs[i].program_name);
    EXPECT_EQ(corpus[i].manifest, programs[i].manifest);
    EXPECT_EQ(ReadAll(tmp.path() / (programs[i].program_name + ".c")), programs[i].source);
  }
}

TEST(CorpusTest, MissingIndexIsIoError) {
  TempDir tmp;
  try {
    LoadCorpus(tmp.path());
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
}

std::vector<CorpusItem> InMemoryCorpus(const ExperimentPlan& plan) {
  std::vector<CorpusItem> corpus;
  for (const auto& prog : GenBatch(plan, testing::SyntheticPool(6, 2))) {
    corpus.push_back({prog.program_name, prog.program_name + ".manifest.json", prog.manifest});
  }
  return corpus;
}

TEST(RunMatrixTest, CellAccountingAndWorkerIndependence) {
  ExperimentPlan plan = SmallPlan();
  plan.budget.max_execs = 3000;
  const auto corpus = InMemoryCorpus(plan);
  plan.workers = 1;
  const auto serial = RunMatrix(plan, corpus);
  plan.workers = 4;
  const auto parallel = RunMatrix(plan, corpus);
  ASSERT_EQ(serial.size(), corpus.size() * plan.schedules.size());
  ASSERT_EQ(MatrixCsv(serial), MatrixCsv(parallel));
  for (std::size_t i = 0; i < serial.size(); ++i) {
    const MatrixCell& cell = serial[i];
    EXPECT_EQ(cell.program, corpus[i / plan.schedules.size()].program);
    EXPECT_EQ(cell.trials, plan.trials);
    EXPECT_EQ(static_cast<int>(cell.execs_to_bug.size()), cell.bugs_found);
    EXPECT_LE(cell.bugs_found, cell.trials);
    EXPECT_LE(cell.execs, static_cast<std::uint64_t>(cell.trials) * plan.budget.max_execs);
    for (std::uint64_t e : cell.execs_to_bug) EXPECT_LE(e, plan.budget.max_execs);
  }
  EXPECT_EQ(serial[0].schedule, "FAST");
  EXPECT_EQ(serial[1].schedule, "FAST_PLUS");
}

TEST(RunMatrixTest, TrialSeedsSharedAcrossSchedulesDistinctAcrossTrials) {
  EXPECT_EQ(TrialSeed(1, "a", 0), TrialSeed(1, "a", 0));
  EXPECT_NE(TrialSeed(1, "a", 0), TrialSeed(1, "a", 1));
  EXPECT_NE(TrialSeed(1, "a", 0), TrialSeed(1, "b", 0));
  EXPECT_NE(TrialSeed(1, "a", 0), TrialSeed(2, "a", 0));
}

TEST(MatrixCsvTest, RoundTripAndMissingValues) {
  MatrixCell found{"prog_0", "prog_0.manifest.json", 4, 1, 0, "FAST", 4, 3,
                   {10, 30, 20}, 1, 12, 40, 400};
  MatrixCell missed{"prog_1", "prog_1.manifest.json", 6, 0, 1, "AFL_CONST", 2, 0,
                    {}, 0, 4, 0, 0};
  const std::string csv = MatrixCsv({found, missed});
  const auto rows = ParseMatrixCsv(csv);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].program, "prog_0");
  EXPECT_EQ(rows[0].p, 4);
  EXPECT_EQ(rows[0].m, 1);
  EXPECT_EQ(rows[0].bugs_found, 3);
  EXPECT_DOUBLE_EQ(rows[0].bug_rate, 0.75);
  EXPECT_DOUBLE_EQ(*rows[0].median_execs_to_bug, 20.0);
  EXPECT_DOUBLE_EQ(*rows[0].mean_execs_to_bug, 20.0);
  EXPECT_DOUBLE_EQ(rows[0].explosion_rate, 0.25);
  EXPECT_DOUBLE_EQ(rows[0].mean_paths_found, 3.0);
  EXPECT_DOUBLE_EQ(rows[0].mean_cycles, 10.0);
  EXPECT_DOUBLE_EQ(rows[0].mean_execs_per_cycle, 10.0);
  EXPECT_FALSE(rows[1].median_execs_to_bug.has_value());
  EXPECT_FALSE(rows[1].mean_execs_to_bug.has_value());
  EXPECT_DOUBLE_EQ(rows[1].mean_execs_per_cycle, 0.0);
  EXPECT_THAT(csv, HasSubstr(",NA,NA,"));
  EXPECT_EQ(MatrixCsv(std::vector<MatrixCell>{}).find('\n'), csv.find('\n'));
}

TEST(MatrixCsvTest, Malformed) {
  EXPECT_TRUE(ParseMatrixCsv("").empty());
  const std::string header = MatrixCsv({}).substr(0, MatrixCsv({}).find('\n') + 1);
  for (const std::string& bad :
       {std::string("a,b\n1,2\n"), header + "x,y\n",
        header + "p,m,notint,0,0,FAST,1,0,0,NA,NA,0,0,0,0,0\n"}) {
    try {
      ParseMatrixCsv(bad);
      ADD_FAILURE() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kMalformedCsv);
    }
  }
}

TEST(ReportTest, SeriesShapes) {
  std::vector<MatrixCell> cells;
  for (int p : {4, 8}) {
    for (const char* sched : {"AFL_CONST", "FAST"}) {
      for (int i = 0; i < 2; ++i) {
        cells.push_back({"p" + std::to_string(p) + "_" + std::to_string(i), "x", p, 0, 0,
                         sched, 5, i, std::vector<std::uint64_t>(i, 100), 0, 5, 5, 500});
      }
    }
  }
  const auto series = BuildReport(ParseMatrixCsv(MatrixCsv(cells)));
  ASSERT_EQ(series.size(), 3u);
  EXPECT_EQ(series[0].name, "bugs_by_paths");
  ASSERT_EQ(series[0].rows.size(), 4u);
  EXPECT_THAT(series[0].rows[0], ElementsAre("4", "AFL_CONST", "2", "1", "10"));
  EXPECT_EQ(series[1].rows.size(), cells.size());
  EXPECT_EQ(series[2].rows.size(), cells.size());
  EXPECT_TRUE(BuildReport({}).empty());

  TempDir tmp;
  WriteReport(series, tmp.path());
  const std::string dat = ReadAll(tmp.path() / "bugs_by_paths.dat");
  EXPECT_THAT(dat, ::testing::StartsWith("# p schedule programs bugs_found trials\n"));
  EXPECT_TRUE(fs::exists(tmp.path() / "execs_to_bug.dat"));
  EXPECT_TRUE(fs::exists(tmp.path() / "cycles.dat"));
}

TEST(MedianTest, OddEvenEmpty) {
  EXPECT_DOUBLE_EQ(Median({3, 1, 2}), 2.0);
  EXPECT_DOUBLE_EQ(Median({4, 1, 2, 3}), 2.5);
  EXPECT_DOUBLE_EQ(Median({7}), 7.0);
}

}  // namespace
}  // namespace fedata
