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

#include "fedata/codegen.h"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "fedata/error.h"
#include "fedata/templates.h"

namespace fedata {
namespace {

constexpr int kMinTrips = 1;
constexpr int kMaxTrips = 8;
constexpr int kNoiseLocals = 3;
constexpr std::size_t kNoChain = static_cast<std::size_t>(-1);

struct Stmt {
  enum class Kind { kLine, kIf, kWhile };
  Kind kind = Kind::kLine;
  std::string text;  // line text, if condition, or loop counter name
  int trips = 0;
  std::vector<Stmt> body;
};

Stmt Line(std::string text) { return {Stmt::Kind::kLine, std::move(text), 0, {}}; }

std::string HexByte(std::uint8_t b) {
  char buf[8];
  std::snprintf(buf, sizeof(buf), "0x%02x", b);
  return buf;
}

std::string RenderCheck(const ConditionSpec& cond) {
  if (!cond.window) return "1";
  const std::size_t off = cond.window->offset;
  const std::size_t width = cond.window->width;
  if (const auto* n = std::get_if<NormalCheck>(&cond.check)) {
    return "fedata_in[" + std::to_string(off) + "] " +
           std::string(CompareOpSymbol(n->op)) + " " + HexByte(n->threshold);
  }
  if (const auto* m = std::get_if<MagicCheck>(&cond.check)) {
    std::string lit;
    for (std::uint8_t b : m->bytes) {
      char buf[8];
      std::snprintf(buf, sizeof(buf), "\\x%02x", b);
      lit += buf;
    }
    return "!memcmp(fedata_in + " + std::to_string(off) + ", \"" + lit +
           "\", " + std::to_string(width) + ")";
  }
  return "func_checksum(fedata_in + " + std::to_string(off) + ", " +
         std::to_string(width) + ")";
}

std::string CallText(std::string_view callee, const Fcg& fcg) {
  std::string args;
  if (callee != kBugNodeId) {
    const auto& params = fcg.Node(callee).signature.params;
    for (std::size_t i = 0; i < params.size(); ++i) {
      if (i) args += ", ";
      args += "1";
    }
  }
  return EmittedFunctionName(callee) + "(" + args + ");";
}

class ProgramEmitter {
 public:
  ProgramEmitter(const Fcg& fcg, const BugPathSelection& selection,
                 const BugPathSpec& spec, const FeatureConfig& config)
      : fcg_(fcg),
        selection_(selection),
        spec_(spec),
        config_(config),
        rng_(MixSeed(config.seed, HashString("codegen"))) {
    fillers_ = SplitLines(LoadTemplate(TemplateId::kFiller).text);
  }

  std::string Emit(int* key_line) {
    CheckInputs();
    ClassifyEdges();

    std::ostringstream out;
    out << "/* Generated by fedata. p=" << config_.p << " m=" << config_.m
        << " k=" << config_.k << " seed=" << config_.seed << " */\n";
    out << "#include <stdio.h>\n#include <stdlib.h>\n#include <string.h>\n\n";
    const std::size_t len = spec_.total_input_len;
    out << Instantiate(LoadTemplate(TemplateId::kInputPreamble),
                       {{"buflen", std::to_string(std::max<std::size_t>(len, 1))},
                        {"len", std::to_string(len)}});
    if (UsesChecksum()) {
      const ChecksumParams& cp = config_.checksum;
      out << "\n"
          << Instantiate(LoadTemplate(TemplateId::kChecksumFn),
                         {{"len", std::to_string(cp.length)},
                          {"mod", std::to_string(cp.modulus)},
                          {"res", std::to_string(cp.residue)}});
    }
    out << "\nstatic void " << kBugNodeId << "(void);\n";
    for (const auto& [id, node] : fcg_.nodes()) {
      if (id == kBugNodeId || id == fcg_.main_id()) continue;
      out << "static " << Prototype(id, node) << ";\n";
    }

    out << "\nstatic void " << kBugNodeId << "(void)\n{\n";
    for (const std::string& line :
         SplitLines(LoadTemplate(TemplateId::kBugCwe761).text)) {
      out << "    " << line << "\n";
    }
    out << "}\n";

    for (const auto& [id, node] : fcg_.nodes()) {
      if (id == kBugNodeId) continue;
      out << "\n";
      EmitFunction(id, node, out);
    }

    std::string source = out.str();
    *key_line = FindKeyLine(source);
    return source;
  }

 private:
  static std::vector<std::string> SplitLines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty()) lines.push_back(line);
    }
    return lines;
  }

  static int FindKeyLine(const std::string& source) {
    int line = 1;
    int found = 0;
    std::size_t start = 0;
    while (start < source.size()) {
      std::size_t end = source.find('\n', start);
      if (end == std::string::npos) end = source.size();
      if (std::string_view(source).substr(start, end - start).find(
              kKeyLineMarker) != std::string_view::npos) {
        if (found) throw Error(ErrorCode::kEmissionOverflow, "duplicate key line");
        found = line;
      }
      ++line;
      start = end + 1;
    }
    if (!found) throw Error(ErrorCode::kEmissionOverflow, "missing key line");
    return found;
  }

  bool UsesChecksum() const {
    return std::any_of(spec_.conditions.begin(), spec_.conditions.end(),
                       [](const ConditionSpec& c) {
                         return std::holds_alternative<ChecksumCheck>(c.check);
                       });
  }

  std::string Prototype(std::string_view id, const FunctionSkeleton& node) const {
    std::string text = node.signature.return_type.empty()
                           ? std::string("int")
                           : node.signature.return_type;
    text += " " + EmittedFunctionName(id) + "(";
    if (node.signature.params.empty()) text += "void";
    for (std::size_t i = 0; i < node.signature.params.size(); ++i) {
      if (i) text += ", ";
      text += node.signature.params[i].type + " a" + std::to_string(i);
    }
    return text + ")";
  }

  void CheckInputs() {
    const auto& path = selection_.node_sequence;
    if (path.size() < 2 || path.front() != fcg_.main_id() ||
        path.back() != kBugNodeId || !fcg_.HasNode(kBugNodeId)) {
      throw Error(ErrorCode::kEmissionOverflow, "selection is not a main->bug path");
    }
    PathWeight(fcg_, path);
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      path_index_[path[i]] = i;
      chain_len_[path[i]] = fcg_.NodeWeight(path[i]);
    }
    for (std::size_t i = 0; i < spec_.conditions.size(); ++i) {
      const SlotRef& pos = spec_.conditions[i].position;
      auto it = chain_len_.find(pos.function);
      if (it == chain_len_.end() || pos.slot < 0 || pos.slot >= it->second ||
          !slot_condition_.emplace(std::make_pair(pos.function, pos.slot), i)
               .second) {
        throw Error(ErrorCode::kEmissionOverflow,
                    "condition " + std::to_string(i) + " has no slot at " +
                        pos.function + "#" + std::to_string(pos.slot));
      }
    }
  }

  bool OnPath(std::string_view id) const {
    return path_index_.count(std::string(id)) > 0;
  }

  std::string PathPred(const std::string& id) const {
    const std::size_t i = path_index_.at(id);
    return i == 0 ? std::string() : selection_.node_sequence[i - 1];
  }

  // Live calls form a DFS tree from main; a bug-path node is called live only
  // by its predecessor on the bug path, and only the last path node calls the
  // bug node. Every other edge is emitted under if (0).
  void ClassifyEdges() {
    std::set<std::string> visited;
    visited.insert(fcg_.main_id());
    const std::string& last = selection_.node_sequence[selection_.node_sequence.size() - 2];
    // Explicit stack in pre-order with lexicographic children.
    std::vector<std::pair<std::string, std::vector<std::string>>> frames;
    frames.push_back({fcg_.main_id(), fcg_.Successors(fcg_.main_id())});
    std::vector<std::size_t> cursor{0};
    while (!frames.empty()) {
      auto& [u, succ] = frames.back();
      std::size_t& i = cursor.back();
      if (i == succ.size()) {
        frames.pop_back();
        cursor.pop_back();
        continue;
      }
      const std::string v = succ[i++];
      const std::string from = u;
      bool descend = false;
      if (v == kBugNodeId) {
        if (from != last) guarded_[from].push_back(v);
      } else if (OnPath(v)) {
        if (PathPred(v) == from) {
          descend = visited.insert(v).second;
        } else {
          guarded_[from].push_back(v);
        }
      } else if (visited.insert(v).second) {
        live_[from].push_back(v);
        descend = true;
      } else {
        guarded_[from].push_back(v);
      }
      if (descend) {
        frames.push_back({v, fcg_.Successors(v)});
        cursor.push_back(0);
      }
    }
  }

  std::string NextCallForPath(const std::string& id) const {
    const std::size_t i = path_index_.at(id);
    return CallText(selection_.node_sequence[i + 1], fcg_);
  }

  std::string NoiseCondition() {
    const int var = static_cast<int>(rng_.Below(kNoiseLocals));
    const int mod = static_cast<int>(rng_.Between(2, 9));
    const int k = static_cast<int>(rng_.Between(1, mod - 1));
    return "fd_v" + std::to_string(var) + " % " + std::to_string(mod) + " < " +
           std::to_string(k);
  }

  Stmt MakeWhile(std::vector<Stmt> body) {
    Stmt w;
    w.kind = Stmt::Kind::kWhile;
    w.text = "fd_w" + std::to_string(loop_counter_++);
    w.trips = static_cast<int>(rng_.Between(kMinTrips, kMaxTrips));
    w.body = std::move(body);
    return w;
  }

  Stmt BuildNoise(const ControlSlot& slot) {
    std::vector<Stmt> body;
    for (const ControlSlot& child : slot.children) body.push_back(BuildNoise(child));
    if (slot.kind == SlotKind::kWhile) return MakeWhile(std::move(body));
    Stmt s;
    s.kind = Stmt::Kind::kIf;
    s.text = NoiseCondition();
    s.body = std::move(body);
    return s;
  }

  // Builds `slots`; when `level` is not kNoChain the chain continues through
  // slots[chain_[level]].
  std::vector<Stmt> BuildList(const std::vector<ControlSlot>& slots,
                              std::size_t level) {
    std::vector<Stmt> out;
    for (std::size_t i = 0; i < slots.size(); ++i) {
      if (level != kNoChain && chain_[level] == i) {
        BuildChainNode(slots[i], level, out);
      } else {
        out.push_back(BuildNoise(slots[i]));
      }
    }
    return out;
  }

  // Chain ifs become the bug-path conditions; chain whiles are closed before
  // the next chain node so the bug path itself contains only ifs.
  void BuildChainNode(const ControlSlot& slot, std::size_t level,
                      std::vector<Stmt>& out) {
    const std::size_t next = level + 1 < chain_.size() ? level + 1 : kNoChain;
    if (slot.kind == SlotKind::kWhile) {
      std::vector<Stmt> body;
      for (std::size_t i = 0; i < slot.children.size(); ++i) {
        if (next != kNoChain && chain_[next] == i) continue;
        body.push_back(BuildNoise(slot.children[i]));
      }
      out.push_back(MakeWhile(std::move(body)));
      if (next != kNoChain) BuildChainNode(slot.children[chain_[next]], next, out);
      return;
    }
    const int if_index = chain_if_counter_++;
    Stmt s;
    s.kind = Stmt::Kind::kIf;
    auto it = slot_condition_.find({current_, if_index});
    s.text = it == slot_condition_.end() ? "1"
                                         : RenderCheck(spec_.conditions[it->second]);
    s.body = BuildList(slot.children, next);
    if (if_index == current_chain_ifs_ - 1) s.body.push_back(Line(NextCallForPath(current_)));
    out.push_back(std::move(s));
  }

  static void CollectBlocks(std::vector<Stmt>& list,
                            std::vector<std::vector<Stmt>*>& blocks) {
    blocks.push_back(&list);
    for (Stmt& s : list) {
      if (s.kind != Stmt::Kind::kLine) CollectBlocks(s.body, blocks);
    }
  }

  std::string Filler(int index) {
    const std::string& pattern = fillers_[rng_.Below(fillers_.size())];
    const int dst = index % kNoiseLocals;
    const int src = static_cast<int>(rng_.Below(kNoiseLocals));
    TemplateAsset asset{TemplateId::kFiller, pattern};
    return Instantiate(asset, {{"dst", "fd_v" + std::to_string(dst)},
                               {"src", "fd_v" + std::to_string(src)},
                               {"k", std::to_string(rng_.Between(1, 97))}});
  }

  void Render(const std::vector<Stmt>& list, int indent, std::ostream& out) const {
    const std::string pad(static_cast<std::size_t>(indent) * 4, ' ');
    for (const Stmt& s : list) {
      switch (s.kind) {
        case Stmt::Kind::kLine:
          out << pad << s.text << "\n";
          break;
        case Stmt::Kind::kIf:
          out << pad << "if (" << s.text << ") {\n";
          Render(s.body, indent + 1, out);
          out << pad << "}\n";
          break;
        case Stmt::Kind::kWhile:
          out << pad << "int " << s.text << " = 0;\n";
          out << pad << "while (" << s.text << " < " << s.trips << ") {\n";
          out << pad << "    " << s.text << "++;\n";
          Render(s.body, indent + 1, out);
          out << pad << "}\n";
          break;
      }
    }
  }

  void EmitFunction(const std::string& id, const FunctionSkeleton& node,
                    std::ostream& out) {
    const bool is_main = id == fcg_.main_id();
    current_ = id;
    loop_counter_ = 0;
    chain_if_counter_ = 0;
    const bool on_path = OnPath(id);
    chain_ = on_path ? DeepestIfChain(node.slots) : std::vector<std::size_t>{};
    current_chain_ifs_ = on_path ? node.max_nested_if : 0;

    std::vector<Stmt> body;
    if (is_main) body.push_back(Line("fedata_read_input();"));
    std::vector<Stmt> structure =
        BuildList(node.slots, chain_.empty() ? kNoChain : 0);
    for (Stmt& s : structure) body.push_back(std::move(s));
    if (on_path && current_chain_ifs_ == 0) body.push_back(Line(NextCallForPath(id)));
    for (const std::string& callee : live_[id]) body.push_back(Line(CallText(callee, fcg_)));
    if (auto it = guarded_.find(id); it != guarded_.end() && !it->second.empty()) {
      Stmt dead;
      dead.kind = Stmt::Kind::kIf;
      dead.text = "0";
      for (const std::string& callee : it->second) dead.body.push_back(Line(CallText(callee, fcg_)));
      body.push_back(std::move(dead));
    }

    std::vector<std::vector<Stmt>*> blocks;
    CollectBlocks(body, blocks);
    std::vector<std::vector<Stmt>> fill(blocks.size());
    for (int i = 0; i < node.statement_count; ++i) {
      fill[static_cast<std::size_t>(i) % blocks.size()].push_back(Line(Filler(i)));
    }
    // Pre-order: descendants follow their block, so filling back to front
    // never touches a vector whose ancestor has already reallocated.
    for (std::size_t b = blocks.size(); b-- > 0;) {
      blocks[b]->insert(blocks[b]->begin(), std::make_move_iterator(fill[b].begin()),
                        std::make_move_iterator(fill[b].end()));
    }

    if (is_main) {
      out << "int main(void)\n{\n";
    } else {
      out << "static " << Prototype(id, node) << "\n{\n";
    }
    out << "    long fd_v0 = " << rng_.Between(1, 1000) << ", fd_v1 = "
        << rng_.Between(1, 1000) << ", fd_v2 = " << rng_.Between(1, 1000) << ";\n";
    Render(body, 1, out);
    out << "    return 0;\n}\n";
  }

  const Fcg& fcg_;
  const BugPathSelection& selection_;
  const BugPathSpec& spec_;
  const FeatureConfig& config_;
  Rng rng_;
  std::vector<std::string> fillers_;

  std::map<std::string, std::size_t> path_index_;
  std::map<std::string, int> chain_len_;
  std::map<std::pair<std::string, int>, std::size_t> slot_condition_;
  std::map<std::string, std::vector<std::string>> live_;
  std::map<std::string, std::vector<std::string>> guarded_;

  std::string current_;
  std::vector<std::size_t> chain_;
  int current_chain_ifs_ = 0;
  int chain_if_counter_ = 0;
  int loop_counter_ = 0;
};

}  // namespace

std::string ProgramName(std::string_view skeleton, int m, int p) {
  return std::string(skeleton) + "_" + std::to_string(m) + "_" +
         std::to_string(p) + "_";
}

std::string EmittedFunctionName(std::string_view node_id) {
  if (node_id == "main" || node_id == kBugNodeId) return std::string(node_id);
  return "f_" + std::string(node_id);
}

Manifest EmitManifest(const BugPathSpec& spec, const FeatureConfig& config,
                      const BugPathSelection& selection,
                      const FcgSummary& fcg_summary) {
  (void)selection;
  Manifest manifest;
  manifest.seed = config.seed;
  manifest.p = config.p;
  manifest.c = config.c();
  manifest.m = spec.CountOf("magic");
  manifest.k = spec.CountOf("checksum");
  manifest.bug.function = std::string(kBugNodeId);
  manifest.conditions = spec.conditions;
  manifest.witness = spec.witness;
  manifest.input_len = spec.total_input_len;
  manifest.fcg = fcg_summary;
  return manifest;
}

GeneratedProgram EmitProgram(const Fcg& fcg, const BugPathSelection& selection,
                             const BugPathSpec& spec,
                             const FeatureConfig& config,
                             std::string_view skeleton_name) {
  GeneratedProgram program;
  program.program_name = ProgramName(skeleton_name, config.m, config.p);
  int key_line = 0;
  program.source = ProgramEmitter(fcg, selection, spec, config).Emit(&key_line);
  program.manifest =
      EmitManifest(spec, config, selection, {fcg.nodes().size(), fcg.edges().size()});
  program.manifest.bug.line = key_line;
  ValidateManifest(program.manifest);
  return program;
}

GeneratedProgram GenerateProgram(const std::vector<FunctionSkeleton>& skeletons,
                                 std::string_view skeleton_name,
                                 const FeatureConfig& config) {
  config.Validate();
  const Fcg fcg = AttachBugNode(Normalize(Fcg::FromSkeletons(skeletons)));
  Rng rng(config.seed);
  Rng select_rng = rng.Fork(1);
  Rng plan_rng = rng.Fork(2);
  const BugPathSelection selection = SelectBugPath(fcg, config.c(), select_rng);
  const BugPathSpec spec = PlanConditions(fcg, selection, config, plan_rng);
  return EmitProgram(fcg, selection, spec, config, skeleton_name);
}

}  // namespace fedata
