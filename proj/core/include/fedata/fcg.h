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

#ifndef FEDATA_FCG_H_
#define FEDATA_FCG_H_

#include <compare>
#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fedata/rng.h"
#include "fedata/skeleton.h"

namespace fedata {

inline constexpr std::string_view kBugNodeId = "__fedata_bug";
inline constexpr std::size_t kDefaultPathCap = 100000;

struct Edge {
  std::string src;
  std::string dst;

  auto operator<=>(const Edge&) const = default;
};

// Directed function-call graph. The weight of u->v is max_nested_if(u), so all
// out-edges of a node share one weight. Parallel edges collapse.
class Fcg {
 public:
  using NodeMap = std::map<std::string, FunctionSkeleton, std::less<>>;

  Fcg() = default;
  explicit Fcg(std::string main_id) : main_id_(std::move(main_id)) {}

  // Nodes are the given functions; edges are calls to functions in the same
  // set. Unresolved callees are dropped. On duplicate names the first
  // definition wins.
  static Fcg FromSkeletons(const std::vector<FunctionSkeleton>& functions,
                           std::string main_id = "main");

  void AddNode(FunctionSkeleton node);
  void AddEdge(std::string src, std::string dst);

  const NodeMap& nodes() const { return nodes_; }
  const std::set<Edge>& edges() const { return edges_; }
  const std::string& main_id() const { return main_id_; }

  bool HasNode(std::string_view id) const;
  bool HasEdge(std::string_view src, std::string_view dst) const;
  const FunctionSkeleton& Node(std::string_view id) const;

  int NodeWeight(std::string_view id) const;
  int EdgeWeight(const Edge& edge) const { return NodeWeight(edge.src); }

  // Successors in lexicographic order.
  std::vector<std::string> Successors(std::string_view id) const;

  // Node label "name:max_nested_if", edge label = weight.
  std::string ToDot() const;

  bool operator==(const Fcg&) const = default;

 private:
  NodeMap nodes_;
  std::set<Edge> edges_;
  std::string main_id_ = "main";
};

// Removes DFS back edges (children in lexicographic order, self loops
// included) and every node unreachable from main. Throws
// Error{kNoMainFunction}.
Fcg Normalize(const Fcg& raw);

// Adds kBugNodeId with an edge from every existing node.
Fcg AttachBugNode(const Fcg& fcg);

struct BugPathSelection {
  std::vector<std::string> node_sequence;  // main ... kBugNodeId
  int total_weight = 0;
  int required_conditions = 0;
  std::size_t candidates = 0;  // qualifying paths seen
  bool truncated = false;      // enumeration hit the cap

  bool operator==(const BugPathSelection&) const = default;
};

// All main->bug paths with weight >= min_weight, in DFS order with
// lexicographic children, stopping after `cap` paths. Branches that cannot
// reach min_weight are pruned.
std::vector<std::vector<std::string>> EnumerateBugPaths(
    const Fcg& fcg, int min_weight, std::size_t cap = kDefaultPathCap,
    bool* truncated = nullptr);

// Uniform choice among qualifying paths. Throws Error{kProgramTooSmall}.
BugPathSelection SelectBugPath(const Fcg& fcg, int required_conditions,
                               Rng& rng, std::size_t cap = kDefaultPathCap);

// Throws Error{kNotAPath} if a consecutive pair is not an edge.
int PathWeight(const Fcg& fcg, std::span<const std::string> node_sequence);

}  // namespace fedata

#endif  // FEDATA_FCG_H_
