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

#include "fedata/manifest.h"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "fedata/error.h"
#include "json.hpp"

namespace fedata {
namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void Malformed(const std::string& what) {
  throw Error(ErrorCode::kMalformedManifest, what);
}

json ConditionToJson(const ConditionSpec& cond) {
  json j;
  j["fn"] = cond.position.function;
  j["slot"] = cond.position.slot;
  j["kind"] = CheckKindName(cond.check);
  if (const auto* n = std::get_if<NormalCheck>(&cond.check)) {
    j["op"] = CompareOpSymbol(n->op);
    j["operand_hex"] = HexEncode(std::span(&n->threshold, 1));
  } else if (const auto* m = std::get_if<MagicCheck>(&cond.check)) {
    j["operand_hex"] = HexEncode(m->bytes);
  } else if (const auto* k = std::get_if<ChecksumCheck>(&cond.check)) {
    j["len"] = k->params.length;
    j["modulus"] = k->params.modulus;
    j["residue"] = k->params.residue;
  }
  if (cond.window) {
    j["offset"] = cond.window->offset;
    j["width"] = cond.window->width;
  }
  return j;
}

Bytes DecodeOperand(const json& j) {
  auto bytes = HexDecode(j.at("operand_hex").get<std::string>());
  if (!bytes) Malformed("operand_hex is not hex");
  return *bytes;
}

ConditionSpec ConditionFromJson(const json& j) {
  ConditionSpec cond;
  cond.position.function = j.at("fn").get<std::string>();
  cond.position.slot = j.at("slot").get<int>();
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "normal") {
    NormalCheck n;
    const std::string op = j.at("op").get<std::string>();
    if (op == "<") {
      n.op = CompareOp::kLess;
    } else if (op == ">") {
      n.op = CompareOp::kGreater;
    } else {
      Malformed("unknown operator '" + op + "'");
    }
    const Bytes operand = DecodeOperand(j);
    if (operand.size() != 1) Malformed("normal operand must be one byte");
    n.threshold = operand[0];
    cond.check = n;
  } else if (kind == "magic") {
    MagicCheck m{DecodeOperand(j)};
    if (m.bytes.empty()) Malformed("empty magic value");
    cond.check = std::move(m);
  } else if (kind == "checksum") {
    ChecksumParams params;
    params.length = j.at("len").get<int>();
    params.modulus = j.at("modulus").get<int>();
    params.residue = j.at("residue").get<int>();
    cond.check = ChecksumCheck{params};
  } else if (kind == "always") {
    cond.check = AlwaysTrue{};
  } else {
    Malformed("unknown condition kind '" + kind + "'");
  }
  if (kind != "always") {
    cond.window = InputWindow{j.at("offset").get<std::size_t>(),
                              j.at("width").get<std::size_t>()};
  } else if (j.contains("offset") || j.contains("width")) {
    Malformed("always-true condition must not carry an input window");
  }
  return cond;
}

}  // namespace

std::string SerializeManifest(const Manifest& manifest) {
  json j;
  j["version"] = manifest.version;
  j["seed"] = manifest.seed;
  j["p"] = manifest.p;
  j["c"] = manifest.c;
  j["m"] = manifest.m;
  j["k"] = manifest.k;
  j["bug"] = json{{"cwe", manifest.bug.cwe},
                  {"function", manifest.bug.function},
                  {"line", manifest.bug.line}};
  json conditions = json::array();
  for (const ConditionSpec& cond : manifest.conditions) {
    conditions.push_back(ConditionToJson(cond));
  }
  j["conditions"] = std::move(conditions);
  j["witness_hex"] = HexEncode(manifest.witness);
  j["input_len"] = manifest.input_len;
  j["fcg"] = json{{"nodes", manifest.fcg.nodes}, {"edges", manifest.fcg.edges}};
  return j.dump(2) + "\n";
}

Manifest ParseManifest(std::string_view text) {
  Manifest manifest;
  try {
    const json j = json::parse(text);
    if (!j.is_object()) Malformed("top level must be an object");
    static const std::vector<std::string> kKeys = {
        "version", "seed",       "p",         "c",   "m", "k", "bug",
        "conditions", "witness_hex", "input_len", "fcg"};
    for (const auto& [key, value] : j.items()) {
      if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end()) {
        Malformed("unexpected key '" + key + "'");
      }
    }
    manifest.version = j.at("version").get<int>();
    manifest.seed = j.at("seed").get<std::uint64_t>();
    manifest.p = j.at("p").get<int>();
    manifest.c = j.at("c").get<int>();
    manifest.m = j.at("m").get<int>();
    manifest.k = j.at("k").get<int>();
    const json& bug = j.at("bug");
    manifest.bug.cwe = bug.at("cwe").get<int>();
    manifest.bug.function = bug.at("function").get<std::string>();
    manifest.bug.line = bug.at("line").get<int>();
    for (const json& cond : j.at("conditions")) {
      manifest.conditions.push_back(ConditionFromJson(cond));
    }
    auto witness = HexDecode(j.at("witness_hex").get<std::string>());
    if (!witness) Malformed("witness_hex is not hex");
    manifest.witness = std::move(*witness);
    manifest.input_len = j.at("input_len").get<std::size_t>();
    manifest.fcg.nodes = j.at("fcg").at("nodes").get<std::size_t>();
    manifest.fcg.edges = j.at("fcg").at("edges").get<std::size_t>();
  } catch (const json::exception& e) {
    Malformed(e.what());
  }
  ValidateManifest(manifest);
  return manifest;
}

void ValidateManifest(const Manifest& manifest) {
  if (manifest.version != kManifestVersion) {
    Malformed("unsupported version " + std::to_string(manifest.version));
  }
  if (manifest.c < 0 || manifest.p != manifest.c + 1) Malformed("p must equal c + 1");
  int consuming = 0;
  int magic = 0;
  int checksums = 0;
  std::vector<InputWindow> windows;
  for (const ConditionSpec& cond : manifest.conditions) {
    if (cond.ConsumesInput() == std::holds_alternative<AlwaysTrue>(cond.check)) {
      Malformed("window presence disagrees with condition kind");
    }
    if (!cond.ConsumesInput()) continue;
    ++consuming;
    const InputWindow w = *cond.window;
    if (w.width == 0) Malformed("zero-width input window");
    if (w.offset + w.width > manifest.input_len) Malformed("window exceeds input_len");
    if (std::holds_alternative<NormalCheck>(cond.check)) {
      if (w.width != 1) Malformed("normal condition must read one byte");
    } else if (const auto* m = std::get_if<MagicCheck>(&cond.check)) {
      ++magic;
      if (m->bytes.size() != w.width) Malformed("magic width mismatch");
    } else if (const auto* k = std::get_if<ChecksumCheck>(&cond.check)) {
      ++checksums;
      if (k->params.length < 1 || k->params.modulus < 2 ||
          static_cast<std::size_t>(k->params.length) != w.width) {
        Malformed("checksum parameters disagree with window");
      }
    }
    windows.push_back(w);
  }
  if (consuming != manifest.c) Malformed("condition list does not carry c input conditions");
  if (magic != manifest.m) Malformed("magic count disagrees with m");
  if (checksums != manifest.k) Malformed("checksum count disagrees with k");
  std::sort(windows.begin(), windows.end(),
            [](const InputWindow& a, const InputWindow& b) { return a.offset < b.offset; });
  for (std::size_t i = 1; i < windows.size(); ++i) {
    if (windows[i - 1].offset + windows[i - 1].width > windows[i].offset) {
      Malformed("input windows overlap");
    }
  }
  if (manifest.witness.size() != manifest.input_len) {
    Malformed("witness length differs from input_len");
  }
}

Manifest LoadManifest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseManifest(buffer.str());
}

void SaveManifest(const Manifest& manifest, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << SerializeManifest(manifest);
}

}  // namespace fedata
