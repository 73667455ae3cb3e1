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

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <thread>

#include "fedata/error.h"
#include "fedata/manifest.h"
#include "json.hpp"

namespace fedata {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

[[noreturn]] void BadPlan(const std::string& what) {
  throw Error(ErrorCode::kMalformedPlan, what);
}

[[noreturn]] void BadCsv(const std::string& what) {
  throw Error(ErrorCode::kMalformedCsv, what);
}

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFile(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
}

// Identifier-safe skeleton name for program names.
std::string Sanitize(std::string_view name) {
  std::string out;
  for (char ch : name) {
    const bool ok = (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') ||
                    (ch >= '0' && ch <= '9') || ch == '_';
    out += ok ? ch : '_';
  }
  return out.empty() ? std::string("skeleton") : out;
}

std::string FormatDouble(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

template <typename T>
T Field(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    BadPlan(std::string(key) + ": " + e.what());
  }
}

ScheduleParams ParseSchedule(const json& j) {
  ScheduleParams params;
  const std::string mode =
      j.is_string() ? j.get<std::string>() : Field<std::string>(j, "mode", "");
  const auto parsed = ParseScheduleMode(mode);
  if (!parsed) BadPlan("unknown schedule '" + mode + "'");
  params.mode = *parsed;
  if (j.is_object()) {
    params.alpha = Field<std::uint64_t>(j, "alpha", params.alpha);
    params.beta = Field<double>(j, "beta", params.beta);
    params.upper_m = Field<std::uint64_t>(j, "upper_m", params.upper_m);
    params.lower_l = Field<std::uint64_t>(j, "lower_l", params.lower_l);
  }
  return params;
}

std::size_t WorkerCount(std::size_t requested, std::size_t jobs) {
  std::size_t n = requested ? requested : std::thread::hardware_concurrency();
  return std::max<std::size_t>(1, std::min(n, jobs));
}

}  // namespace

void WriteSkeletonSet(const std::vector<TranslationUnit>& units,
                      const fs::path& out) {
  fs::create_directories(out);
  for (const TranslationUnit& unit : units) {
    std::string stem = unit.path;
    for (std::size_t pos; (pos = stem.find('/')) != std::string::npos;) {
      stem.replace(pos, 1, "__");
    }
    WriteFile(out / (stem + ".json"), SkeletonsToJson(unit));
  }
}

std::vector<SkeletonSet> LoadPool(const fs::path& pool_dir) {
  if (!fs::is_directory(pool_dir)) {
    throw Error(ErrorCode::kIo, "pool is not a directory: " + pool_dir.string());
  }
  std::vector<fs::path> dirs;
  for (const auto& entry : fs::directory_iterator(pool_dir)) {
    if (entry.is_directory()) dirs.push_back(entry.path());
  }
  std::sort(dirs.begin(), dirs.end());
  std::vector<SkeletonSet> pool;
  for (const fs::path& dir : dirs) {
    std::vector<fs::path> docs;
    for (const auto& entry : fs::directory_iterator(dir)) {
      if (entry.path().extension() == ".json") docs.push_back(entry.path());
    }
    if (docs.empty()) continue;
    std::sort(docs.begin(), docs.end());
    SkeletonSet set{dir.filename().string(), {}};
    for (const fs::path& doc : docs) {
      TranslationUnit unit = SkeletonsFromJson(ReadFile(doc));
      for (auto& fn : unit.functions) set.functions.push_back(std::move(fn));
    }
    pool.push_back(std::move(set));
  }
  return pool;
}

void ExperimentPlan::Validate() const {
  if (trials < 1) BadPlan("trials must be >= 1");
  if (max_mutations < 1) BadPlan("max_mutations must be >= 1");
  if (budget.max_execs == 0 || budget.max_cycles == 0) BadPlan("budget must be positive");
  for (const CorpusEntry& e : corpus) {
    if (e.repetitions < 0) BadPlan("repetitions must be >= 0");
    FeatureConfig config;
    config.p = e.p;
    config.m = e.m;
    config.k = e.k;
    config.magic_len = e.magic_len;
    config.checksum = e.checksum;
    try {
      config.Validate();
    } catch (const Error& err) {
      BadPlan(err.what());
    }
  }
  for (const ScheduleParams& s : schedules) {
    try {
      s.Validate();
    } catch (const Error& err) {
      BadPlan(err.what());
    }
  }
}

ExperimentPlan ParseExperimentPlan(std::string_view text, const fs::path& base_dir) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    BadPlan(e.what());
  }
  if (!j.is_object()) BadPlan("plan must be a JSON object");
  ExperimentPlan plan;
  auto resolve = [&](const std::string& p) {
    fs::path path(p);
    return (path.is_relative() && !base_dir.empty() ? base_dir / path : path).lexically_normal();
  };
  if (j.contains("pool")) plan.pool = resolve(Field<std::string>(j, "pool", ""));
  if (j.contains("out")) plan.out = resolve(Field<std::string>(j, "out", ""));
  plan.seed = Field<std::uint64_t>(j, "seed", 0);
  plan.trials = Field<int>(j, "trials", 1);
  plan.starter_seed = Field<std::string>(j, "starter_seed", plan.starter_seed);
  plan.max_mutations = Field<int>(j, "max_mutations", plan.max_mutations);
  plan.workers = Field<std::size_t>(j, "workers", 0);
  plan.cycle_logs = Field<bool>(j, "cycle_logs", false);
  if (j.contains("budget")) {
    const json& b = j["budget"];
    plan.budget.max_execs = Field<std::uint64_t>(b, "max_execs", plan.budget.max_execs);
    plan.budget.max_cycles = Field<std::uint64_t>(b, "max_cycles", plan.budget.max_cycles);
  }
  if (j.contains("schedules")) {
    if (!j["schedules"].is_array()) BadPlan("schedules must be an array");
    for (const json& s : j["schedules"]) plan.schedules.push_back(ParseSchedule(s));
  }
  if (j.contains("corpus")) {
    if (!j["corpus"].is_array()) BadPlan("corpus must be an array");
    for (const json& c : j["corpus"]) {
      CorpusEntry e;
      e.p = Field<int>(c, "p", e.p);
      e.m = Field<int>(c, "m", e.m);
      e.k = Field<int>(c, "k", e.k);
      e.repetitions = Field<int>(c, "repetitions", e.repetitions);
      if (c.contains("magic_len")) {
        e.magic_len.min = Field<int>(c["magic_len"], "min", e.magic_len.min);
        e.magic_len.max = Field<int>(c["magic_len"], "max", e.magic_len.max);
      }
      if (c.contains("checksum")) {
        const json& cs = c["checksum"];
        e.checksum.length = Field<int>(cs, "length", e.checksum.length);
        e.checksum.modulus = Field<int>(cs, "modulus", e.checksum.modulus);
        e.checksum.residue = Field<int>(cs, "residue", e.checksum.residue);
      }
      plan.corpus.push_back(e);
    }
  }
  plan.Validate();
  return plan;
}

ExperimentPlan LoadExperimentPlan(const fs::path& path) {
  return ParseExperimentPlan(ReadFile(path), path.parent_path());
}

std::vector<GeneratedProgram> GenBatch(const ExperimentPlan& plan,
                                       const std::vector<SkeletonSet>& pool) {
  std::vector<GeneratedProgram> programs;
  for (std::size_t e = 0; e < plan.corpus.size(); ++e) {
    const CorpusEntry& entry = plan.corpus[e];
    for (int r = 0; r < entry.repetitions; ++r) {
      FeatureConfig config;
      config.seed = MixSeed(plan.seed, MixSeed(e, static_cast<std::uint64_t>(r)));
      config.p = entry.p;
      config.m = entry.m;
      config.k = entry.k;
      config.magic_len = entry.magic_len;
      config.checksum = entry.checksum;
      if (pool.empty()) throw Error(ErrorCode::kPoolExhausted, "empty skeleton pool");
      Rng pick(config.seed);
      const std::size_t start = pick.Below(pool.size());
      std::optional<GeneratedProgram> program;
      for (std::size_t t = 0; t < pool.size() && !program; ++t) {
        const SkeletonSet& set = pool[(start + t) % pool.size()];
        try {
          program = GenerateProgram(set.functions, Sanitize(set.name), config);
        } catch (const Error& err) {
          if (err.code() != ErrorCode::kProgramTooSmall &&
              err.code() != ErrorCode::kNoMainFunction) {
            throw;
          }
        }
      }
      if (!program) {
        throw Error(ErrorCode::kPoolExhausted,
                    "no skeleton hosts p=" + std::to_string(entry.p) +
                        " m=" + std::to_string(entry.m) +
                        " k=" + std::to_string(entry.k));
      }
      program->program_name += std::to_string(programs.size());
      programs.push_back(std::move(*program));
    }
  }
  return programs;
}

std::vector<fs::path> WriteBatch(const std::vector<GeneratedProgram>& programs,
                                 const fs::path& out) {
  fs::create_directories(out);
  std::vector<fs::path> manifests;
  json index = json::array();
  for (const GeneratedProgram& program : programs) {
    WriteFile(out / (program.program_name + ".c"), program.source);
    const std::string manifest_name = program.program_name + ".manifest.json";
    SaveManifest(program.manifest, out / manifest_name);
    manifests.push_back(out / manifest_name);
    index.push_back({{"program", program.program_name},
                     {"source", program.program_name + ".c"},
                     {"manifest", manifest_name}});
  }
  WriteFile(out / "corpus.json", index.dump(2) + "\n");
  return manifests;
}

std::vector<CorpusItem> LoadCorpus(const fs::path& dir) {
  json index;
  try {
    index = json::parse(ReadFile(dir / "corpus.json"));
  } catch (const json::exception& e) {
    BadPlan(std::string("corpus.json: ") + e.what());
  }
  if (!index.is_array()) BadPlan("corpus.json must be an array");
  std::vector<CorpusItem> items;
  for (const json& entry : index) {
    CorpusItem item;
    item.program = Field<std::string>(entry, "program", "");
    item.manifest_path = dir / Field<std::string>(entry, "manifest", "");
    item.manifest = LoadManifest(item.manifest_path);
    items.push_back(std::move(item));
  }
  return items;
}

std::uint64_t TrialSeed(std::uint64_t plan_seed, std::string_view program,
                        int trial) {
  return MixSeed(MixSeed(plan_seed, HashString(program)),
                 static_cast<std::uint64_t>(trial));
}

std::vector<MatrixCell> RunMatrix(const ExperimentPlan& plan,
                                  const std::vector<CorpusItem>& corpus) {
  plan.Validate();
  const std::size_t n_sched = plan.schedules.size();
  const std::size_t n_trials = static_cast<std::size_t>(plan.trials);
  const std::size_t jobs = corpus.size() * n_sched * n_trials;
  std::vector<CampaignMetrics> results(jobs);
  std::vector<std::exception_ptr> errors(jobs);
  if (plan.cycle_logs) fs::create_directories(plan.out / "logs");

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t job; (job = next.fetch_add(1)) < jobs;) {
      const std::size_t trial = job % n_trials;
      const std::size_t sched = (job / n_trials) % n_sched;
      const CorpusItem& item = corpus[job / (n_trials * n_sched)];
      try {
        CampaignOptions options;
        options.schedule = plan.schedules[sched];
        options.budget = plan.budget;
        options.seed = TrialSeed(plan.seed, item.program, static_cast<int>(trial));
        options.max_mutations = plan.max_mutations;
        options.starter = plan.starter_seed;
        results[job] = RunCampaign(item.manifest, options);
        if (plan.cycle_logs) {
          WriteFile(plan.out / "logs" /
                        (item.program + "." +
                         std::string(ScheduleModeName(options.schedule.mode)) +
                         ".t" + std::to_string(trial) + ".csv"),
                    CycleLogCsv(results[job]));
        }
      } catch (...) {
        errors[job] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> threads;
  for (std::size_t t = 0; t < WorkerCount(plan.workers, jobs); ++t) {
    threads.emplace_back(worker);
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  std::vector<MatrixCell> cells;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    for (std::size_t s = 0; s < n_sched; ++s) {
      MatrixCell cell;
      cell.program = corpus[i].program;
      cell.manifest = corpus[i].manifest_path.filename().string();
      cell.p = corpus[i].manifest.p;
      cell.m = corpus[i].manifest.m;
      cell.k = corpus[i].manifest.k;
      cell.schedule = std::string(ScheduleModeName(plan.schedules[s].mode));
      cell.trials = plan.trials;
      for (std::size_t t = 0; t < n_trials; ++t) {
        const CampaignMetrics& r = results[(i * n_sched + s) * n_trials + t];
        if (r.bug_found_at_exec) {
          ++cell.bugs_found;
          cell.execs_to_bug.push_back(*r.bug_found_at_exec);
        }
        if (r.cycle_explosion) ++cell.explosions;
        cell.paths_found += static_cast<std::uint64_t>(r.paths_found);
        cell.cycles += r.cycles_completed;
        cell.execs += r.total_execs;
      }
      cells.push_back(std::move(cell));
    }
  }
  return cells;
}

double Median(std::vector<double> values) {
  if (values.empty()) return 0;
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 ? values[n / 2] : (values[n / 2 - 1] + values[n / 2]) / 2;
}

namespace {

constexpr const char* kMatrixColumns[] = {
    "program",         "manifest",          "p",
    "m",               "k",                 "schedule",
    "trials",          "bugs_found",        "bug_rate",
    "median_execs_to_bug", "mean_execs_to_bug", "explosions",
    "explosion_rate",  "mean_paths_found",  "mean_cycles",
    "mean_execs_per_cycle"};
constexpr std::size_t kMatrixColumnCount = std::size(kMatrixColumns);

std::vector<std::string> SplitCsvLine(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    out.emplace_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

double ParseNumber(const std::string& text, const char* column) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    BadCsv(std::string(column) + ": not a number: '" + text + "'");
  }
}

int ParseInt(const std::string& text, const char* column) {
  const double v = ParseNumber(text, column);
  if (v != static_cast<int>(v)) BadCsv(std::string(column) + ": not an integer");
  return static_cast<int>(v);
}

}  // namespace

std::string MatrixCsv(const std::vector<MatrixCell>& cells) {
  std::ostringstream out;
  for (std::size_t i = 0; i < kMatrixColumnCount; ++i) {
    out << (i ? "," : "") << kMatrixColumns[i];
  }
  out << '\n';
  for (const MatrixCell& c : cells) {
    const double trials = std::max(c.trials, 1);
    std::vector<double> found(c.execs_to_bug.begin(), c.execs_to_bug.end());
    std::string median = "NA";
    std::string mean = "NA";
    if (!found.empty()) {
      median = FormatDouble(Median(found));
      mean = FormatDouble(std::accumulate(found.begin(), found.end(), 0.0) /
                          static_cast<double>(found.size()));
    }
    const double per_cycle =
        c.cycles ? static_cast<double>(c.execs) / static_cast<double>(c.cycles) : 0.0;
    out << c.program << ',' << c.manifest << ',' << c.p << ',' << c.m << ','
        << c.k << ',' << c.schedule << ',' << c.trials << ',' << c.bugs_found
        << ',' << FormatDouble(c.bugs_found / trials) << ',' << median << ','
        << mean << ',' << c.explosions << ','
        << FormatDouble(c.explosions / trials) << ','
        << FormatDouble(static_cast<double>(c.paths_found) / trials) << ','
        << FormatDouble(static_cast<double>(c.cycles) / trials) << ','
        << FormatDouble(per_cycle) << '\n';
  }
  return out.str();
}

std::vector<MatrixRow> ParseMatrixCsv(std::string_view csv) {
  std::vector<MatrixRow> rows;
  std::istringstream in{std::string(csv)};
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> f = SplitCsvLine(line);
    if (f.size() != kMatrixColumnCount) {
      BadCsv("expected " + std::to_string(kMatrixColumnCount) + " columns, got " +
             std::to_string(f.size()));
    }
    if (header) {
      for (std::size_t i = 0; i < kMatrixColumnCount; ++i) {
        if (f[i] != kMatrixColumns[i]) BadCsv("unexpected header '" + f[i] + "'");
      }
      header = false;
      continue;
    }
    MatrixRow r;
    r.program = f[0];
    r.manifest = f[1];
    r.p = ParseInt(f[2], "p");
    r.m = ParseInt(f[3], "m");
    r.k = ParseInt(f[4], "k");
    r.schedule = f[5];
    r.trials = ParseInt(f[6], "trials");
    r.bugs_found = ParseInt(f[7], "bugs_found");
    r.bug_rate = ParseNumber(f[8], "bug_rate");
    if (f[9] != "NA") r.median_execs_to_bug = ParseNumber(f[9], "median_execs_to_bug");
    if (f[10] != "NA") r.mean_execs_to_bug = ParseNumber(f[10], "mean_execs_to_bug");
    r.explosions = ParseInt(f[11], "explosions");
    r.explosion_rate = ParseNumber(f[12], "explosion_rate");
    r.mean_paths_found = ParseNumber(f[13], "mean_paths_found");
    r.mean_cycles = ParseNumber(f[14], "mean_cycles");
    r.mean_execs_per_cycle = ParseNumber(f[15], "mean_execs_per_cycle");
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<ReportSeries> BuildReport(const std::vector<MatrixRow>& rows) {
  if (rows.empty()) return {};
  ReportSeries by_paths{"bugs_by_paths", {"p", "schedule", "programs", "bugs_found", "trials"}, {}};
  std::map<std::pair<int, std::string>, std::array<int, 3>> buckets;
  for (const MatrixRow& r : rows) {
    auto& b = buckets[{r.p, r.schedule}];
    b[0] += 1;
    b[1] += r.bugs_found;
    b[2] += r.trials;
  }
  for (const auto& [key, b] : buckets) {
    by_paths.rows.push_back({std::to_string(key.first), key.second, std::to_string(b[0]),
                             std::to_string(b[1]), std::to_string(b[2])});
  }
  ReportSeries execs{"execs_to_bug",
                     {"program", "p", "schedule", "median_execs_to_bug", "bugs_found"},
                     {}};
  ReportSeries cycles{"cycles",
                      {"program", "p", "schedule", "mean_cycles",
                       "mean_execs_per_cycle", "explosion_rate"},
                      {}};
  for (const MatrixRow& r : rows) {
    execs.rows.push_back({r.program, std::to_string(r.p), r.schedule,
                          r.median_execs_to_bug ? FormatDouble(*r.median_execs_to_bug)
                                                : std::string("NA"),
                          std::to_string(r.bugs_found)});
    cycles.rows.push_back({r.program, std::to_string(r.p), r.schedule,
                           FormatDouble(r.mean_cycles),
                           FormatDouble(r.mean_execs_per_cycle),
                           FormatDouble(r.explosion_rate)});
  }
  return {by_paths, execs, cycles};
}

void WriteReport(const std::vector<ReportSeries>& series, const fs::path& dir) {
  fs::create_directories(dir);
  for (const ReportSeries& s : series) {
    std::ostringstream out;
    out << '#';
    for (const std::string& c : s.columns) out << ' ' << c;
    out << '\n';
    for (const auto& row : s.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? " " : "") << row[i];
      out << '\n';
    }
    WriteFile(dir / (s.name + ".dat"), out.str());
  }
}

}  // namespace fedata
