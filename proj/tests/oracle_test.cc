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

#include <set>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "fedata/error.h"
#include "fedata/rng.h"
#include "support/fixtures.h"

namespace fedata {
namespace {

using ::testing::ElementsAre;
using ::testing::IsEmpty;

TEST(EvaluateTest, ThreeConditionBugInput) {
  const Manifest m = testing::ThreeConditionManifest();
  const Verdict v = Evaluate(m, Bytes{'b', 'a', 'd'});
  EXPECT_TRUE(v.path.is_bug());
  EXPECT_TRUE(v.triggers_bug);
  EXPECT_EQ(v.consumed_bytes, 3u);
  EXPECT_EQ(v.path.ToString(), "BUG");
}

TEST(EvaluateTest, StrictInequalityAtBoundary) {
  const Verdict v = Evaluate(testing::ThreeConditionManifest(), Bytes{'a', 'a', 'a'});
  EXPECT_EQ(v.path, PathId::FailedAt(0));
  EXPECT_FALSE(v.triggers_bug);
  EXPECT_EQ(v.consumed_bytes, 1u);
  EXPECT_EQ(v.path.ToString(), "0");
}

TEST(EvaluateTest, NoConditionsAlwaysBug) {
  Manifest m;
  m.bug.function = "__fedata_bug";
  Rng rng(3);
  for (int i = 0; i < 20; ++i) {
    Bytes input(rng.Below(8));
    for (auto& b : input) b = rng.Byte();
    EXPECT_TRUE(Evaluate(m, input).triggers_bug);
  }
}

TEST(EvaluateTest, ShortInputIsZeroPaddedLongInputTruncated) {
  const Manifest m = testing::ManifestOf(
      {NormalCheck{CompareOp::kGreater, 5}, NormalCheck{CompareOp::kLess, 1}}, {6, 0});
  EXPECT_TRUE(Evaluate(m, Bytes{6}).triggers_bug);
  EXPECT_TRUE(Evaluate(m, Bytes{6, 0, 99, 99}).triggers_bug);
  EXPECT_EQ(Evaluate(m, Bytes{}).path, PathId::FailedAt(0));
}

TEST(EvaluateTest, AlwaysTrueSlotsAreTransparent) {
  Manifest m = testing::ThreeConditionManifest();
  m.conditions.insert(m.conditions.begin() + 1, {{"f", 0}, AlwaysTrue{}, std::nullopt});
  m.conditions.push_back({{"g", 0}, AlwaysTrue{}, std::nullopt});
  EXPECT_TRUE(Evaluate(m, Bytes{'b', 'a', 'd'}).triggers_bug);
  EXPECT_EQ(Evaluate(m, Bytes{'b', 'z', 'd'}).path, PathId::FailedAt(1));
  EXPECT_EQ(CountFeasiblePaths(m), 4);
}

TEST(EvaluateTest, MagicAndChecksum) {
  const Manifest m = testing::ManifestOf({MagicCheck{{'B', 'Y'}}, MakeChecksum({2, 4, 1})},
                                         {'B', 'Y', 1, 0});
  EXPECT_TRUE(Evaluate(m, m.witness).triggers_bug);
  EXPECT_EQ(Evaluate(m, Bytes{'B', 'Z', 1, 0}).path, PathId::FailedAt(0));
  EXPECT_EQ(Evaluate(m, Bytes{'B', 'Y', 2, 0}).path, PathId::FailedAt(1));
  EXPECT_TRUE(Evaluate(m, Bytes{'B', 'Y', 3, 2}).triggers_bug);
}

TEST(EvaluateTest, OracleObjectMatchesFreeFunction) {
  const Manifest m = testing::ThreeConditionManifest();
  const Oracle oracle(m);
  EXPECT_EQ(oracle.condition_count(), 3);
  EXPECT_EQ(oracle.input_len(), 3u);
  Rng rng(11);
  for (int i = 0; i < 500; ++i) {
    Bytes in{rng.Byte(), rng.Byte(), rng.Byte()};
    EXPECT_EQ(oracle.Evaluate(in).path, Evaluate(m, in).path);
  }
}

TEST(EvaluateTest, ExhaustiveTwoByteAgreementWithDirectPredicate) {
  const Manifest m = testing::ManifestOf(
      {NormalCheck{CompareOp::kLess, 0x80}, NormalCheck{CompareOp::kGreater, 0x20}},
      {0x10, 0x30});
  int bugs = 0;
  for (int a = 0; a < 256; ++a) {
    for (int b = 0; b < 256; ++b) {
      const Verdict v = Evaluate(m, Bytes{static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b)});
      const bool expect = a < 0x80 && b > 0x20;
      ASSERT_EQ(v.triggers_bug, expect) << a << "," << b;
      ASSERT_EQ(v.triggers_bug, v.path.is_bug());
      bugs += v.triggers_bug;
    }
  }
  EXPECT_EQ(bugs, 0x80 * (255 - 0x20));
}

TEST(CountFeasiblePathsTest, Examples) {
  EXPECT_EQ(CountFeasiblePaths(testing::ThreeConditionManifest()), 4);
  Manifest empty;
  empty.bug.function = "__fedata_bug";
  EXPECT_EQ(CountFeasiblePaths(empty), 1);
  std::vector<Check> checks(199, NormalCheck{CompareOp::kGreater, 0x40});
  const Manifest big = testing::ManifestOf(checks, Bytes(199, 0x41));
  EXPECT_EQ(CountFeasiblePaths(big), 200);
}

TEST(CountFeasiblePathsTest, DegenerateConditions) {
  auto expect_degenerate = [](const Manifest& m) {
    try {
      CountFeasiblePaths(m);
      ADD_FAILURE();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kDegenerateCondition);
    }
  };
  expect_degenerate(testing::ManifestOf({NormalCheck{CompareOp::kGreater, 255}}, {0}));
  expect_degenerate(testing::ManifestOf({NormalCheck{CompareOp::kLess, 0}}, {0}));
  expect_degenerate(testing::ManifestOf({MakeChecksum({1, 300, 299})}, {0}));
  // A modulus of 1 would be a tautology; the schema already rejects it.
  try {
    CountFeasiblePaths(testing::ManifestOf({MakeChecksum({1, 1, 0})}, {0}));
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMalformedManifest);
  }
}

TEST(EnumeratePathOutcomesTest, OneBugOutcomeAndConcreteInputs) {
  const Manifest m = testing::ManifestOf(
      {NormalCheck{CompareOp::kGreater, 9}, MagicCheck{{1, 2, 3}}, MakeChecksum({})},
      {10, 1, 2, 3, 3, 0, 0, 0, 0, 0, 0});
  const auto outcomes = EnumeratePathOutcomes(m);
  ASSERT_EQ(outcomes.size(), 4u);
  int bugs = 0;
  std::set<PathId> ids;
  for (const auto& o : outcomes) {
    bugs += o.triggers_bug;
    ids.insert(o.path);
    EXPECT_EQ(Evaluate(m, o.input).path, o.path);
  }
  EXPECT_EQ(bugs, 1);
  EXPECT_EQ(ids.size(), 4u);
}

TEST(TriageTest, Examples) {
  const Manifest m = testing::ThreeConditionManifest();
  const std::vector<Bytes> crashes = {m.witness, Bytes{0, 0, 0}};
  const TriageResult r = TriageCrashes(m, crashes);
  EXPECT_EQ(r.bug_count, 1);
  EXPECT_THAT(r.triggering, ElementsAre(0u));
  const TriageResult none = TriageCrashes(m, {});
  EXPECT_EQ(none.bug_count, 0);
  EXPECT_THAT(none.triggering, IsEmpty());
  const std::vector<Bytes> twice = {m.witness, Bytes{'z', 'a', 'z'}, Bytes{0}};
  const TriageResult r2 = TriageCrashes(m, twice);
  EXPECT_EQ(r2.bug_count, 1);
  EXPECT_THAT(r2.triggering, ElementsAre(0u, 1u));
}

TEST(PathIdTest, SlotsAreDense) {
  EXPECT_EQ(PathId::Bug().Slot(3), 3u);
  EXPECT_EQ(PathId::FailedAt(2).Slot(3), 2u);
  EXPECT_LT(PathId::Bug(), PathId::FailedAt(0));
}

}  // namespace
}  // namespace fedata
