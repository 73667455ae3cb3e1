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
#include <limits>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fedata/error.h"

namespace fedata {
namespace {

constexpr int kUnreachable = std::numeric_limits<int>::min() / 4;

// Longest main->bug weight achievable from each node (DAG assumed).
class BestWeights {
 public:
  explicit BestWeights(const Fcg& fcg) : fcg_(fcg) {}

  int From(const std::string& id) {
    if (auto it = memo_.find(id); it != memo_.end()) return it->second;
    int best = kUnreachable;
    if (id == kBugNodeId) {
      best = 0;
    } else {
      for (const std::string& next : fcg_.Successors(id)) {
        const int below = From(next);
        if (below != kUnreachable) {
          best = std::max(best, fcg_.NodeWeight(id) + below);
        }
      }
    }
    memo_.emplace(id, best);
    return best;
  }

 private:
  const Fcg& fcg_;
  std::unordered_map<std::string, int> memo_;
};

class PathCollector {
 public:
  PathCollector(const Fcg& fcg, int min_weight, std::size_t cap)
      : fcg_(fcg), best_(fcg), min_weight_(min_weight), cap_(cap) {}

  void Run() {
    if (!fcg_.HasNode(fcg_.main_id())) return;
    if (best_.From(fcg_.main_id()) < min_weight_) return;
    Visit(fcg_.main_id(), 0);
  }

  std::vector<std::vector<std::string>> paths;
  bool truncated = false;

 private:
  void Visit(const std::string& id, int weight) {
    if (truncated) return;
    stack_.push_back(id);
    if (id == kBugNodeId) {
      if (weight >= min_weight_) {
        if (paths.size() == cap_) {
          truncated = true;
        } else {
          paths.push_back(stack_);
        }
      }
    } else {
      const int here = weight + fcg_.NodeWeight(id);
      for (const std::string& next : fcg_.Successors(id)) {
        const int below = best_.From(next);
        if (below == kUnreachable || here + below < min_weight_) continue;
        Visit(next, here);
        if (truncated) break;
      }
    }
    stack_.pop_back();
  }

  const Fcg& fcg_;
  BestWeights best_;
  int min_weight_;
  std::size_t cap_;
  std::vector<std::string> stack_;
};

}  // namespace

Fcg Fcg::FromSkeletons(const std::vector<FunctionSkeleton>& functions,
                       std::string main_id) {
  Fcg fcg(std::move(main_id));
  for (const FunctionSkeleton& fn : functions) {
    if (!fcg.HasNode(fn.name)) fcg.AddNode(fn);
  }
  for (const auto& [name, fn] : fcg.nodes_) {
    for (const std::string& callee : fn.callees) {
      if (fcg.HasNode(callee)) fcg.edges_.insert({name, callee});
    }
  }
  return fcg;
}

void Fcg::AddNode(FunctionSkeleton node) {
  std::string id = node.name;
  nodes_.insert_or_assign(std::move(id), std::move(node));
}

void Fcg::AddEdge(std::string src, std::string dst) {
  edges_.insert({std::move(src), std::move(dst)});
}

bool Fcg::HasNode(std::string_view id) const { return nodes_.find(id) != nodes_.end(); }

bool Fcg::HasEdge(std::string_view src, std::string_view dst) const {
  return edges_.contains(Edge{std::string(src), std::string(dst)});
}

const FunctionSkeleton& Fcg::Node(std::string_view id) const {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) {
    throw Error(ErrorCode::kNotAPath, "unknown node " + std::string(id));
  }
  return it->second;
}

int Fcg::NodeWeight(std::string_view id) const { return Node(id).max_nested_if; }

std::vector<std::string> Fcg::Successors(std::string_view id) const {
  std::vector<std::string> out;
  for (auto it = edges_.lower_bound(Edge{std::string(id), ""});
       it != edges_.end() && it->src == id; ++it) {
    out.push_back(it->dst);
  }
  return out;
}

std::string Fcg::ToDot() const {
  std::ostringstream out;
  out << "digraph fcg {\n";
  for (const auto& [name, fn] : nodes_) {
    out << "  \"" << name << "\" [label=\"" << name << ":" << fn.max_nested_if
        << "\"";
    if (name == main_id_) out << ", shape=doublecircle";
    out << "];\n";
  }
  for (const Edge& e : edges_) {
    out << "  \"" << e.src << "\" -> \"" << e.dst << "\" [label=\""
        << EdgeWeight(e) << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

Fcg Normalize(const Fcg& raw) {
  if (!raw.HasNode(raw.main_id())) {
    throw Error(ErrorCode::kNoMainFunction,
                "no node named '" + raw.main_id() + "'");
  }
  enum class Color { kWhite, kGray, kBlack };
  std::unordered_map<std::string, Color> color;
  std::vector<Edge> kept;

  struct Frame {
    std::string id;
    std::vector<std::string> succ;
    std::size_t next = 0;
  };
  std::vector<Frame> stack;
  stack.push_back({raw.main_id(), raw.Successors(raw.main_id())});
  color[raw.main_id()] = Color::kGray;
  while (!stack.empty()) {
    Frame& top = stack.back();
    if (top.next == top.succ.size()) {
      color[top.id] = Color::kBlack;
      stack.pop_back();
      continue;
    }
    std::string child = top.succ[top.next++];
    const Color c = color.contains(child) ? color[child] : Color::kWhite;
    if (c == Color::kGray) continue;  // back edge, self loops included
    kept.push_back({top.id, child});
    if (c == Color::kWhite) {
      color[child] = Color::kGray;
      std::vector<std::string> succ = raw.Successors(child);
      stack.push_back({std::move(child), std::move(succ)});
    }
  }

  Fcg out(raw.main_id());
  for (const auto& [name, fn] : raw.nodes()) {
    if (color.contains(name)) out.AddNode(fn);
  }
  for (Edge& e : kept) out.AddEdge(std::move(e.src), std::move(e.dst));
  return out;
}

Fcg AttachBugNode(const Fcg& fcg) {
  Fcg out = fcg;
  std::vector<std::string> originals;
  for (const auto& [name, fn] : fcg.nodes()) originals.push_back(name);
  FunctionSkeleton bug;
  bug.name = std::string(kBugNodeId);
  bug.signature.return_type = "int";
  out.AddNode(std::move(bug));
  for (std::string& name : originals) {
    out.AddEdge(std::move(name), std::string(kBugNodeId));
  }
  return out;
}

std::vector<std::vector<std::string>> EnumerateBugPaths(const Fcg& fcg,
                                                        int min_weight,
                                                        std::size_t cap,
                                                        bool* truncated) {
  PathCollector collector(fcg, min_weight, cap);
  collector.Run();
  if (truncated != nullptr) *truncated = collector.truncated;
  return std::move(collector.paths);
}

BugPathSelection SelectBugPath(const Fcg& fcg, int required_conditions,
                               Rng& rng, std::size_t cap) {
  bool truncated = false;
  auto paths = EnumerateBugPaths(fcg, required_conditions, cap, &truncated);
  if (paths.empty()) {
    throw Error(ErrorCode::kProgramTooSmall,
                "no main->bug path carries " +
                    std::to_string(required_conditions) + " if statements");
  }
  BugPathSelection selection;
  selection.candidates = paths.size();
  selection.truncated = truncated;
  selection.node_sequence = std::move(paths[rng.Below(paths.size())]);
  selection.total_weight = PathWeight(fcg, selection.node_sequence);
  selection.required_conditions = required_conditions;
  return selection;
}

int PathWeight(const Fcg& fcg, std::span<const std::string> node_sequence) {
  int total = 0;
  for (std::size_t i = 0; i + 1 < node_sequence.size(); ++i) {
    if (!fcg.HasEdge(node_sequence[i], node_sequence[i + 1])) {
      throw Error(ErrorCode::kNotAPath,
                  node_sequence[i] + " -> " + node_sequence[i + 1]);
    }
    total += fcg.EdgeWeight({node_sequence[i], node_sequence[i + 1]});
  }
  return total;
}

}  // namespace fedata
