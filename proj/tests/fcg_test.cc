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

#include "fedata/fcg.h"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "fedata/error.h"
#include "fedata/rng.h"
#include "support/synthetic_source.h"

namespace fedata {
namespace {

using ::testing::ElementsAre;
using ::testing::UnorderedElementsAre;
using Path = std::vector<std::string>;

FunctionSkeleton Node(std::string name, int ifs, std::vector<std::string> callees = {}) {
  FunctionSkeleton f;
  f.name = std::move(name);
  std::vector<ControlSlot>* level = &f.slots;
  for (int i = 0; i < ifs; ++i) {
    level->push_back({SlotKind::kIf, i, {}});
    level = &level->back().children;
  }
  f.max_nested_if = ifs;
  std::sort(callees.begin(), callees.end());
  f.callees = std::move(callees);
  f.signature.return_type = "int";
  return f;
}

// Call graph with weights A=2, B=1, C=3, D=1, E=2, G=0, rooted at A.
Fcg Figure6a() {
  Fcg g("A");
  g.AddNode(Node("A", 2));
  g.AddNode(Node("B", 1));
  g.AddNode(Node("C", 3));
  g.AddNode(Node("D", 1));
  g.AddNode(Node("E", 2));
  g.AddNode(Node("G", 0));
  g.AddEdge("A", "B");
  g.AddEdge("A", "C");
  g.AddEdge("B", "G");
  g.AddEdge("C", "D");
  g.AddEdge("C", "E");
  g.AddEdge("D", "E");
  return g;
}

Path WithBug(Path p) {
  p.push_back(std::string(kBugNodeId));
  return p;
}

// Independent oracle: every simple main->bug path, no pruning.
std::vector<Path> BruteForcePaths(const Fcg& g) {
  std::vector<Path> out;
  Path cur{g.main_id()};
  std::function<void()> walk = [&] {
    if (cur.back() == kBugNodeId) {
      out.push_back(cur);
      return;
    }
    for (const std::string& v : g.Successors(cur.back())) {
      if (std::find(cur.begin(), cur.end(), v) != cur.end()) continue;
      cur.push_back(v);
      walk();
      cur.pop_back();
    }
  };
  walk();
  return out;
}

int SumWeights(const Fcg& g, const Path& p) {
  int w = 0;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) w += g.Node(p[i]).max_nested_if;
  return w;
}

bool IsAcyclic(const Fcg& g) {
  std::map<std::string, int> indeg;
  for (const auto& [id, n] : g.nodes()) indeg[id] = 0;
  for (const Edge& e : g.edges()) ++indeg[e.dst];
  std::vector<std::string> ready;
  for (const auto& [id, d] : indeg) {
    if (d == 0) ready.push_back(id);
  }
  std::size_t seen = 0;
  while (!ready.empty()) {
    const std::string u = ready.back();
    ready.pop_back();
    ++seen;
    for (const std::string& v : g.Successors(u)) {
      if (--indeg[v] == 0) ready.push_back(v);
    }
  }
  return seen == g.nodes().size();
}

TEST(FcgTest, FromSkeletonsDropsUnresolvedCallees) {
  const Fcg g = Fcg::FromSkeletons(
      {Node("main", 1, {"f", "printf"}), Node("f", 0, {"main", "f"})});
  EXPECT_EQ(g.nodes().size(), 2u);
  EXPECT_TRUE(g.HasEdge("main", "f"));
  EXPECT_TRUE(g.HasEdge("f", "main"));
  EXPECT_TRUE(g.HasEdge("f", "f"));
  EXPECT_FALSE(g.HasNode("printf"));
  EXPECT_EQ(g.EdgeWeight({"main", "f"}), 1);
}

TEST(NormalizeTest, RemovesBackEdge) {
  Fcg g("A");
  g.AddNode(Node("A", 0));
  g.AddNode(Node("B", 0));
  g.AddEdge("A", "B");
  g.AddEdge("B", "A");
  const Fcg n = Normalize(g);
  EXPECT_THAT(n.edges(), ElementsAre(Edge{"A", "B"}));
  EXPECT_TRUE(n.HasNode("B"));
}

TEST(NormalizeTest, RemovesUnreachable) {
  Fcg g("main");
  g.AddNode(Node("main", 0));
  g.AddNode(Node("X", 0));
  g.AddNode(Node("Y", 0));
  g.AddEdge("main", "X");
  g.AddEdge("Y", "X");
  const Fcg n = Normalize(g);
  EXPECT_FALSE(n.HasNode("Y"));
  EXPECT_THAT(n.edges(), ElementsAre(Edge{"main", "X"}));
}

TEST(NormalizeTest, RemovesSelfLoopKeepsCrossEdges) {
  Fcg g("a");
  for (const char* n : {"a", "b", "c"}) g.AddNode(Node(n, 0));
  g.AddEdge("a", "b");
  g.AddEdge("a", "c");
  g.AddEdge("b", "c");
  g.AddEdge("c", "c");
  const Fcg n = Normalize(g);
  EXPECT_THAT(n.edges(), ElementsAre(Edge{"a", "b"}, Edge{"a", "c"}, Edge{"b", "c"}));
}

TEST(NormalizeTest, NoMain) {
  Fcg g("main");
  g.AddNode(Node("f", 0));
  try {
    Normalize(g);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNoMainFunction);
  }
}

TEST(NormalizeTest, SyntheticGraphsBecomeAcyclicReachableAndIdempotent) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto fns = ExtractSkeletons(testing::SyntheticCSource(seed), seed);
    const Fcg n = Normalize(Fcg::FromSkeletons(fns));
    EXPECT_TRUE(IsAcyclic(n));
    EXPECT_FALSE(n.HasNode("orphan"));
    EXPECT_EQ(Normalize(n), n);
    std::set<std::string> reach{n.main_id()};
    std::vector<std::string> stack{n.main_id()};
    while (!stack.empty()) {
      const std::string u = stack.back();
      stack.pop_back();
      for (const auto& v : n.Successors(u)) {
        if (reach.insert(v).second) stack.push_back(v);
      }
    }
    EXPECT_EQ(reach.size(), n.nodes().size());
  }
}

TEST(AttachBugNodeTest, Figure6b) {
  const Fcg g = Figure6a();
  const Fcg b = AttachBugNode(g);
  EXPECT_EQ(b.nodes().size(), 7u);
  EXPECT_EQ(b.edges().size(), g.edges().size() + 6);
  for (const auto& [id, n] : g.nodes()) EXPECT_TRUE(b.HasEdge(id, kBugNodeId));
}

TEST(AttachBugNodeTest, MainOnly) {
  Fcg g("main");
  g.AddNode(Node("main", 0));
  const Fcg b = AttachBugNode(g);
  EXPECT_EQ(b.nodes().size(), 2u);
  EXPECT_THAT(b.edges(), ElementsAre(Edge{"main", std::string(kBugNodeId)}));
}

TEST(SelectBugPathTest, Figure6CandidatesForSixConditions) {
  const Fcg b = AttachBugNode(Figure6a());
  EXPECT_THAT(EnumerateBugPaths(b, 6),
              UnorderedElementsAre(WithBug({"A", "C", "E"}), WithBug({"A", "C", "D"}),
                                   WithBug({"A", "C", "D", "E"})));
  std::set<Path> picked;
  for (std::uint64_t s = 0; s < 64; ++s) {
    Rng rng(s);
    const BugPathSelection sel = SelectBugPath(b, 6, rng);
    EXPECT_EQ(sel.candidates, 3u);
    EXPECT_FALSE(sel.truncated);
    EXPECT_GE(sel.total_weight, 6);
    EXPECT_EQ(sel.required_conditions, 6);
    picked.insert(sel.node_sequence);
  }
  EXPECT_EQ(picked.size(), 3u);
}

TEST(PathWeightTest, Figure6Weights) {
  const Fcg g = Figure6a();
  const Fcg b = AttachBugNode(g);
  EXPECT_EQ(PathWeight(g, Path{"A", "C", "E"}), 5);
  EXPECT_EQ(PathWeight(b, WithBug({"A", "C", "E"})), 7);
  EXPECT_EQ(PathWeight(b, WithBug({"A", "C", "D"})), 6);
  EXPECT_EQ(PathWeight(b, WithBug({"A", "C", "D", "E"})), 8);
  EXPECT_EQ(PathWeight(g, Path{"C", "D"}), 3);
  try {
    PathWeight(g, Path{"A", "E"});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotAPath);
  }
}

TEST(SelectBugPathTest, TooSmall) {
  Fcg g("main");
  g.AddNode(Node("main", 0));
  Rng rng(0);
  try {
    SelectBugPath(AttachBugNode(g), 1, rng);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kProgramTooSmall);
  }
}

TEST(SelectBugPathTest, ZeroConditionsAcceptsAnyPath) {
  Fcg g("main");
  g.AddNode(Node("main", 0));
  Rng rng(0);
  const auto sel = SelectBugPath(AttachBugNode(g), 0, rng);
  EXPECT_EQ(sel.node_sequence, WithBug({"main"}));
  EXPECT_EQ(sel.total_weight, 0);
}

TEST(SelectBugPathTest, PrunedEnumerationMatchesBruteForce) {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    testing::SyntheticOptions opt;
    opt.functions = 10;
    const auto fns = ExtractSkeletons(testing::SyntheticCSource(seed, opt), seed);
    const Fcg b = AttachBugNode(Normalize(Fcg::FromSkeletons(fns)));
    const std::vector<Path> all = BruteForcePaths(b);
    for (int c : {0, 3, 8, 15}) {
      std::set<Path> expected;
      for (const Path& p : all) {
        if (SumWeights(b, p) >= c) expected.insert(p);
      }
      const auto got = EnumerateBugPaths(b, c);
      EXPECT_EQ(std::set<Path>(got.begin(), got.end()), expected) << seed << " c=" << c;
      EXPECT_EQ(got.size(), expected.size());
    }
  }
}

TEST(SelectBugPathTest, DeterministicAndWeightConfirmed) {
  const auto fns = ExtractSkeletons(testing::SyntheticCSource(77), 77);
  const Fcg b = AttachBugNode(Normalize(Fcg::FromSkeletons(fns)));
  for (std::uint64_t s = 0; s < 20; ++s) {
    Rng r1(s);
    Rng r2(s);
    const auto a = SelectBugPath(b, 4, r1);
    EXPECT_EQ(a, SelectBugPath(b, 4, r2));
    EXPECT_EQ(PathWeight(b, a.node_sequence), a.total_weight);
    EXPECT_GE(a.total_weight, 4);
  }
}

TEST(SelectBugPathTest, CapTruncates) {
  const Fcg b = AttachBugNode(Figure6a());
  bool truncated = false;
  EXPECT_EQ(EnumerateBugPaths(b, 0, 2, &truncated).size(), 2u);
  EXPECT_TRUE(truncated);
}

TEST(FcgTest, DotMentionsWeights) {
  const std::string dot = Figure6a().ToDot();
  EXPECT_NE(dot.find("\"C\""), std::string::npos);
  EXPECT_NE(dot.find("C:3"), std::string::npos);
}

}  // namespace
}  // namespace fedata
