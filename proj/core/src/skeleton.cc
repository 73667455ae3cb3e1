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

#include "fedata/skeleton.h"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "fedata/error.h"
#include "json.hpp"

namespace fedata {
namespace {

using json = nlohmann::ordered_json;

enum class TokenKind { kIdent, kNumber, kPunct, kLiteral };

struct Token {
  TokenKind kind;
  std::string text;
};

bool IsIdentStart(char ch) {
  return std::isalpha(static_cast<unsigned char>(ch)) || ch == '_';
}
bool IsIdentChar(char ch) {
  return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_';
}

// Skips a quoted literal starting at `i` (which holds the quote character).
std::size_t SkipQuoted(std::string_view src, std::size_t i) {
  const char quote = src[i++];
  while (i < src.size() && src[i] != quote && src[i] != '\n') {
    if (src[i] == '\\' && i + 1 < src.size()) ++i;
    ++i;
  }
  return i < src.size() && src[i] == quote ? i + 1 : i;
}

std::vector<Token> Lex(std::string_view src) {
  static constexpr std::string_view kMultiPunct[] = {
      "...", "<<=", ">>=", "->", "++", "--", "<<", ">>", "<=", ">=", "==",
      "!=",  "&&",  "||",  "::", "+=", "-=", "*=", "/=", "%=", "&=", "|=",
      "^=",  "##"};

  std::vector<Token> tokens;
  bool line_start = true;
  std::size_t i = 0;
  while (i < src.size()) {
    const char ch = src[i];
    if (ch == '\n') {
      line_start = true;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++i;
      continue;
    }
    if (ch == '#' && line_start) {
      // Preprocessor directive, including backslash continuations.
      while (i < src.size() && src[i] != '\n') {
        if (src[i] == '\\' && i + 1 < src.size() && src[i + 1] == '\n') ++i;
        ++i;
      }
      continue;
    }
    line_start = false;
    if (src.substr(i, 2) == "//") {
      while (i < src.size() && src[i] != '\n') ++i;
      continue;
    }
    if (src.substr(i, 2) == "/*") {
      const std::size_t close = src.find("*/", i + 2);
      i = close == std::string_view::npos ? src.size() : close + 2;
      continue;
    }
    if (ch == '"' || ch == '\'') {
      i = SkipQuoted(src, i);
      tokens.push_back({TokenKind::kLiteral, ch == '"' ? "\"\"" : "''"});
      continue;
    }
    if (IsIdentStart(ch)) {
      const std::size_t start = i;
      while (i < src.size() && IsIdentChar(src[i])) ++i;
      tokens.push_back({TokenKind::kIdent, std::string(src.substr(start, i - start))});
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(ch)) ||
        (ch == '.' && i + 1 < src.size() &&
         std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
      const std::size_t start = i;
      while (i < src.size()) {
        const char c = src[i];
        if (IsIdentChar(c) || c == '.') {
          ++i;
        } else if ((c == '+' || c == '-') &&
                   std::strchr("eEpP", src[i - 1]) != nullptr) {
          ++i;
        } else {
          break;
        }
      }
      tokens.push_back({TokenKind::kNumber, std::string(src.substr(start, i - start))});
      continue;
    }
    std::size_t len = 1;
    for (std::string_view op : kMultiPunct) {
      if (src.substr(i, op.size()) == op) {
        len = op.size();
        break;
      }
    }
    tokens.push_back({TokenKind::kPunct, std::string(src.substr(i, len))});
    i += len;
  }
  return tokens;
}

const std::unordered_set<std::string>& NonCallKeywords() {
  static const std::unordered_set<std::string> kSet = {
      "if",       "while",     "for",          "switch",  "return",
      "sizeof",   "do",        "else",         "case",    "_Alignof",
      "alignof",  "__attribute__", "__typeof__", "typeof", "defined",
      "_Generic", "_Static_assert", "__asm__",  "asm",     "__extension__"};
  return kSet;
}

const std::unordered_set<std::string>& TypeWords() {
  static const std::unordered_set<std::string> kSet = {
      "int",      "char",     "short",    "long",     "float",  "double",
      "void",     "signed",   "unsigned", "const",    "volatile",
      "struct",   "union",    "enum",     "restrict", "register",
      "_Bool",    "bool",     "static",   "extern",   "inline",
      "auto",     "__inline", "__inline__", "__restrict", "_Complex"};
  return kSet;
}

const std::unordered_set<std::string>& Qualifiers() {
  static const std::unordered_set<std::string> kSet = {
      "const",  "volatile", "static",   "extern",     "inline",
      "register", "restrict", "signed", "unsigned",   "auto",
      "__inline", "__inline__", "__restrict", "_Thread_local"};
  return kSet;
}

bool IsControlKeyword(const std::string& word) {
  return word == "if" || word == "while" || word == "for" ||
         word == "switch" || word == "return" || word == "sizeof";
}

// Index one past the brace matching the `{` at `open`.
std::size_t MatchBrace(const std::vector<Token>& t, std::size_t open) {
  int depth = 0;
  for (std::size_t i = open; i < t.size(); ++i) {
    if (t[i].kind != TokenKind::kPunct) continue;
    if (t[i].text == "{") ++depth;
    if (t[i].text == "}" && --depth == 0) return i;
  }
  throw Error(ErrorCode::kUnbalancedBraces,
              "brace depth never returns to zero");
}

std::string JoinType(const std::vector<Token>& t, std::size_t begin,
                     std::size_t end, std::size_t skip = static_cast<std::size_t>(-1)) {
  std::string out;
  for (std::size_t i = begin; i < end; ++i) {
    if (i == skip) continue;
    const std::string& word = t[i].text;
    if (word == "*") {
      out += '*';
      continue;
    }
    if (word == "[" || word == "]") {
      out += word;
      continue;
    }
    if (!out.empty() && out.back() != '*' && out.back() != '[') out += ' ';
    out += word;
  }
  // "char*" -> "char *" for readability.
  std::string spaced;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i] == '*' && i > 0 && out[i - 1] != ' ' && out[i - 1] != '*') {
      spaced += ' ';
    }
    spaced += out[i];
  }
  return spaced;
}

Param ParseParam(const std::vector<Token>& t, std::size_t begin,
                 std::size_t end) {
  Param param;
  // Function pointer parameter: int (*cb)(int)
  for (std::size_t i = begin; i < end; ++i) {
    if (t[i].text == "(") {
      for (std::size_t j = i; j < end; ++j) {
        if (t[j].kind == TokenKind::kIdent) {
          param.name = t[j].text;
          break;
        }
      }
      param.type = "(*)";
      return param;
    }
  }
  std::size_t region_end = end;
  bool array = false;
  for (std::size_t i = begin; i < end; ++i) {
    if (t[i].text == "[") {
      region_end = i;
      array = true;
      break;
    }
  }
  std::size_t name_idx = static_cast<std::size_t>(-1);
  if (region_end > begin + 1 || (region_end == begin + 1 && array)) {
    const std::size_t last = region_end - 1;
    const bool tagged = last > begin && (t[last - 1].text == "struct" ||
                                         t[last - 1].text == "union" ||
                                         t[last - 1].text == "enum");
    if (t[last].kind == TokenKind::kIdent && !TypeWords().contains(t[last].text) &&
        !tagged) {
      name_idx = last;
    }
  }
  if (name_idx != static_cast<std::size_t>(-1)) param.name = t[name_idx].text;
  param.type = JoinType(t, begin, region_end, name_idx);
  if (array) param.type += "[]";
  return param;
}

std::vector<Param> ParseParams(const std::vector<Token>& t, std::size_t begin,
                               std::size_t end) {
  std::vector<Param> params;
  if (end == begin + 1 && t[begin].text == "void") return params;
  int depth = 0;
  std::size_t start = begin;
  for (std::size_t i = begin; i <= end; ++i) {
    if (i < end) {
      const std::string& s = t[i].text;
      if (s == "(" || s == "[") ++depth;
      if (s == ")" || s == "]") --depth;
      if (!(s == "," && depth == 0)) continue;
    }
    if (i > start && !(i == start + 1 && t[start].text == "...")) {
      params.push_back(ParseParam(t, start, i));
    }
    start = i + 1;
  }
  return params;
}

std::string ReturnType(const std::vector<Token>& t, std::size_t begin,
                       std::size_t end) {
  std::string type = JoinType(t, begin, end);
  return type.empty() ? "int" : type;
}

// Recursive statement scanner over one function body.
class BodyParser {
 public:
  BodyParser(const std::vector<Token>& tokens, std::size_t end)
      : t_(tokens), end_(end) {}

  void ParseStatement(std::size_t& i, std::vector<ControlSlot>& out,
                      int depth) {
    if (i >= end_) return;
    const std::string& s = t_[i].text;
    const bool ident = t_[i].kind == TokenKind::kIdent;
    if (s == "{" && t_[i].kind == TokenKind::kPunct) {
      ++i;
      while (i < end_ && t_[i].text != "}") {
        const std::size_t before = i;
        ParseStatement(i, out, depth);
        if (i == before) ++i;
      }
      if (i < end_) ++i;
      return;
    }
    if (ident && s == "if") {
      ++i;
      SkipParens(i);
      ControlSlot node{SlotKind::kIf, depth, {}};
      ParseStatement(i, node.children, depth + 1);
      out.push_back(std::move(node));
      if (i < end_ && t_[i].text == "else") {
        ++i;
        if (i < end_ && t_[i].text == "if") {
          ParseStatement(i, out, depth);
        } else {
          ControlSlot alt{SlotKind::kIf, depth, {}};
          ParseStatement(i, alt.children, depth + 1);
          out.push_back(std::move(alt));
        }
      }
      return;
    }
    if (ident && (s == "while" || s == "for")) {
      ++i;
      SkipParens(i);
      ControlSlot node{SlotKind::kWhile, depth, {}};
      ParseStatement(i, node.children, depth + 1);
      out.push_back(std::move(node));
      return;
    }
    if (ident && s == "do") {
      ++i;
      ControlSlot node{SlotKind::kWhile, depth, {}};
      ParseStatement(i, node.children, depth + 1);
      if (i < end_ && t_[i].text == "while") {
        ++i;
        SkipParens(i);
      }
      if (i < end_ && t_[i].text == ";") ++i;
      out.push_back(std::move(node));
      return;
    }
    if (ident && s == "switch") {
      ++i;
      SkipParens(i);
      ParseStatement(i, out, depth);
      return;
    }
    if (ident && s == "case") {
      int nest = 0;
      while (i < end_) {
        const std::string& w = t_[i].text;
        if (w == "(" || w == "[") ++nest;
        if (w == ")" || w == "]") --nest;
        ++i;
        if (w == ":" && nest == 0) break;
      }
      return;
    }
    if (ident && s == "default" && i + 1 < end_ && t_[i + 1].text == ":") {
      i += 2;
      return;
    }
    if (ident && s == "else") {
      // Dangling else after a malformed if; treat like any else branch.
      ++i;
      ControlSlot alt{SlotKind::kIf, depth, {}};
      ParseStatement(i, alt.children, depth + 1);
      out.push_back(std::move(alt));
      return;
    }
    if (s == ";") {
      ++i;
      return;
    }
    if (ident && i + 1 < end_ && t_[i + 1].text == ":") {
      i += 2;  // label
      return;
    }
    int nest = 0;
    while (i < end_) {
      const std::string& w = t_[i].text;
      if (t_[i].kind == TokenKind::kPunct) {
        if (w == "(" || w == "[" || w == "{") {
          ++nest;
        } else if (w == ")" || w == "]" || w == "}") {
          if (nest == 0) return;
          --nest;
        } else if (w == ";" && nest == 0) {
          ++i;
          return;
        }
      }
      ++i;
    }
  }

 private:
  void SkipParens(std::size_t& i) {
    if (i >= end_ || t_[i].text != "(") return;
    int depth = 0;
    while (i < end_) {
      if (t_[i].text == "(") ++depth;
      if (t_[i].text == ")" && --depth == 0) {
        ++i;
        return;
      }
      ++i;
    }
  }

  const std::vector<Token>& t_;
  std::size_t end_;
};

FunctionSkeleton BuildSkeleton(const std::vector<Token>& t,
                               std::size_t decl_begin, std::size_t name_idx,
                               std::size_t lparen, std::size_t rparen,
                               std::size_t body_open, std::size_t body_close,
                               std::uint64_t type_seed) {
  FunctionSkeleton fn;
  fn.name = t[name_idx].text;

  Signature raw;
  raw.return_type = ReturnType(t, decl_begin, name_idx);
  raw.params = ParseParams(t, lparen + 1, rparen);
  Rng rng(MixSeed(type_seed, HashString(fn.name)));
  fn.signature = SubstituteSignature(raw, rng);

  int paren = 0;
  std::set<std::string> callees;
  for (std::size_t i = body_open + 1; i < body_close; ++i) {
    const Token& tok = t[i];
    if (tok.kind == TokenKind::kPunct) {
      if (tok.text == "(") ++paren;
      if (tok.text == ")") --paren;
      if (tok.text == ";" && paren == 0) ++fn.statement_count;
      continue;
    }
    if (tok.kind == TokenKind::kIdent && i + 1 < body_close &&
        t[i + 1].text == "(" && !NonCallKeywords().contains(tok.text)) {
      callees.insert(tok.text);
    }
  }
  fn.callees.assign(callees.begin(), callees.end());

  BodyParser parser(t, body_close);
  std::size_t i = body_open + 1;
  while (i < body_close) {
    const std::size_t before = i;
    parser.ParseStatement(i, fn.slots, 0);
    if (i == before) ++i;
  }
  fn.max_nested_if = MaxNestedIf(fn.slots);
  return fn;
}

std::optional<std::string> CanonicalBasic(std::string_view type) {
  if (type.find_first_of("*[(") != std::string_view::npos) return std::nullopt;
  std::istringstream in{std::string(type)};
  std::string word;
  std::set<std::string> words;
  bool any = false;
  while (in >> word) {
    any = true;
    if (Qualifiers().contains(word)) continue;
    words.insert(word);
  }
  if (!any) return std::nullopt;
  static const std::set<std::string> kAllowed = {"int",   "char",  "short",
                                                 "long",  "float", "double"};
  for (const std::string& w : words) {
    if (!kAllowed.contains(w)) return std::nullopt;
  }
  if (words.empty() || (words.size() == 1 && words.contains("int"))) {
    return "int";
  }
  for (std::string_view preferred : {"double", "float", "char", "short", "long"}) {
    if (words.contains(std::string(preferred))) return std::string(preferred);
  }
  return "int";
}

json SlotsToJson(const std::vector<ControlSlot>& slots) {
  json out = json::array();
  for (const ControlSlot& slot : slots) {
    json node;
    node["kind"] = SlotKindName(slot.kind);
    node["depth"] = slot.depth;
    node["children"] = SlotsToJson(slot.children);
    out.push_back(std::move(node));
  }
  return out;
}

std::vector<ControlSlot> SlotsFromJson(const json& j) {
  std::vector<ControlSlot> out;
  for (const json& node : j) {
    ControlSlot slot;
    const std::string kind = node.at("kind").get<std::string>();
    if (kind == "IF") {
      slot.kind = SlotKind::kIf;
    } else if (kind == "WHILE") {
      slot.kind = SlotKind::kWhile;
    } else {
      throw Error(ErrorCode::kIo, "unknown slot kind " + kind);
    }
    slot.depth = node.at("depth").get<int>();
    slot.children = SlotsFromJson(node.at("children"));
    out.push_back(std::move(slot));
  }
  return out;
}

std::pair<int, std::vector<std::size_t>> DeepestChain(
    const std::vector<ControlSlot>& slots) {
  int best = -1;
  std::vector<std::size_t> best_path;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    auto [below, path] = DeepestChain(slots[i].children);
    const int count = below + (slots[i].kind == SlotKind::kIf ? 1 : 0);
    if (count > best) {
      best = count;
      best_path.clear();
      best_path.push_back(i);
      best_path.insert(best_path.end(), path.begin(), path.end());
    }
  }
  return {std::max(best, 0), best_path};
}

}  // namespace

std::string_view SlotKindName(SlotKind kind) {
  return kind == SlotKind::kIf ? "IF" : "WHILE";
}

std::vector<FunctionSkeleton> ExtractSkeletons(std::string_view source,
                                               std::uint64_t type_seed) {
  const std::vector<Token> t = Lex(source);
  std::vector<FunctionSkeleton> out;
  std::size_t decl_begin = 0;
  int transparent = 0;  // open extern "C" { blocks
  std::size_t i = 0;
  while (i < t.size()) {
    const Token& tok = t[i];
    if (tok.kind != TokenKind::kPunct) {
      ++i;
      continue;
    }
    if (tok.text == ";") {
      decl_begin = ++i;
      continue;
    }
    if (tok.text == "}") {
      if (transparent == 0) {
        throw Error(ErrorCode::kUnbalancedBraces, "unmatched '}'");
      }
      --transparent;
      decl_begin = ++i;
      continue;
    }
    if (tok.text != "{") {
      ++i;
      continue;
    }
    if (i >= 2 && t[i - 1].kind == TokenKind::kLiteral &&
        t[i - 2].text == "extern") {
      ++transparent;
      decl_begin = ++i;
      continue;
    }
    const std::size_t close = MatchBrace(t, i);
    std::optional<FunctionSkeleton> fn;
    if (i > decl_begin && t[i - 1].text == ")") {
      const std::size_t rparen = i - 1;
      int depth = 0;
      std::size_t lparen = rparen;
      for (std::size_t j = rparen + 1; j-- > decl_begin;) {
        if (t[j].text == ")") ++depth;
        if (t[j].text == "(" && --depth == 0) {
          lparen = j;
          break;
        }
      }
      bool initializer = false;
      for (std::size_t j = decl_begin; j < lparen; ++j) {
        if (t[j].text == "=") initializer = true;
      }
      if (depth == 0 && lparen > decl_begin && !initializer &&
          t[lparen - 1].kind == TokenKind::kIdent &&
          !IsControlKeyword(t[lparen - 1].text) &&
          !TypeWords().contains(t[lparen - 1].text)) {
        fn = BuildSkeleton(t, decl_begin, lparen - 1, lparen, rparen, i, close,
                           type_seed);
      }
    }
    if (fn) out.push_back(std::move(*fn));
    i = close + 1;
    decl_begin = i;
  }
  if (transparent != 0) {
    throw Error(ErrorCode::kUnbalancedBraces, "unterminated extern block");
  }
  if (out.empty()) {
    throw Error(ErrorCode::kEmptyUnit, "no function definitions found");
  }
  return out;
}

int MaxNestedIf(const std::vector<ControlSlot>& slots) {
  int best = 0;
  for (const ControlSlot& slot : slots) {
    best = std::max(best, (slot.kind == SlotKind::kIf ? 1 : 0) +
                              MaxNestedIf(slot.children));
  }
  return best;
}

std::vector<std::size_t> DeepestIfChain(const std::vector<ControlSlot>& slots) {
  return DeepestChain(slots).second;
}

std::pair<std::string, Signature> ParseDeclaration(std::string_view decl) {
  const std::vector<Token> t = Lex(decl);
  std::size_t rparen = t.size();
  for (std::size_t j = t.size(); j-- > 0;) {
    if (t[j].text == ")") {
      rparen = j;
      break;
    }
  }
  if (rparen == t.size()) {
    throw Error(ErrorCode::kEmptyUnit, "not a function declaration");
  }
  int depth = 0;
  std::size_t lparen = rparen;
  for (std::size_t j = rparen + 1; j-- > 0;) {
    if (t[j].text == ")") ++depth;
    if (t[j].text == "(" && --depth == 0) {
      lparen = j;
      break;
    }
  }
  if (lparen == 0 || t[lparen - 1].kind != TokenKind::kIdent) {
    throw Error(ErrorCode::kEmptyUnit, "not a function declaration");
  }
  Signature sig;
  sig.return_type = ReturnType(t, 0, lparen - 1);
  sig.params = ParseParams(t, lparen + 1, rparen);
  return {t[lparen - 1].text, sig};
}

bool IsBasicType(std::string_view type) {
  const auto canonical = CanonicalBasic(type);
  return canonical && *canonical == type;
}

Signature SubstituteSignature(const Signature& original, Rng& rng) {
  auto substitute = [&rng](const std::string& type) {
    if (auto canonical = CanonicalBasic(type)) return *canonical;
    return std::string(kBasicTypes[rng.Below(kBasicTypes.size())]);
  };
  Signature out;
  out.return_type = substitute(original.return_type);
  for (std::size_t i = 0; i < original.params.size(); ++i) {
    const Param& p = original.params[i];
    if (original.params.size() == 1 && p.type == "void" && p.name.empty()) {
      break;
    }
    Param q;
    q.type = substitute(p.type);
    q.name = p.name.empty() ? "a" + std::to_string(i) : p.name;
    out.params.push_back(std::move(q));
  }
  return out;
}

std::string FormatSignature(std::string_view name, const Signature& sig) {
  std::string out = sig.return_type + " " + std::string(name) + "(";
  for (std::size_t i = 0; i < sig.params.size(); ++i) {
    if (i > 0) out += ", ";
    out += sig.params[i].type;
    if (!sig.params[i].name.empty()) out += " " + sig.params[i].name;
  }
  if (sig.params.empty()) out += "void";
  return out + ")";
}

std::string SkeletonsToJson(const TranslationUnit& unit) {
  json doc;
  doc["unit"] = unit.path;
  json functions = json::array();
  for (const FunctionSkeleton& fn : unit.functions) {
    json f;
    f["name"] = fn.name;
    f["statements"] = fn.statement_count;
    f["slots"] = SlotsToJson(fn.slots);
    f["max_nested_if"] = fn.max_nested_if;
    f["callees"] = fn.callees;
    json sig;
    sig["return"] = fn.signature.return_type;
    json params = json::array();
    for (const Param& p : fn.signature.params) {
      params.push_back(json{{"type", p.type}, {"name", p.name}});
    }
    sig["params"] = std::move(params);
    f["signature"] = std::move(sig);
    functions.push_back(std::move(f));
  }
  doc["functions"] = std::move(functions);
  return doc.dump(2) + "\n";
}

TranslationUnit SkeletonsFromJson(std::string_view text) {
  TranslationUnit unit;
  try {
    const json doc = json::parse(text);
    unit.path = doc.value("unit", "");
    for (const json& f : doc.at("functions")) {
      FunctionSkeleton fn;
      fn.name = f.at("name").get<std::string>();
      fn.statement_count = f.at("statements").get<int>();
      fn.slots = SlotsFromJson(f.at("slots"));
      fn.max_nested_if = f.at("max_nested_if").get<int>();
      fn.callees = f.at("callees").get<std::vector<std::string>>();
      const json& sig = f.at("signature");
      fn.signature.return_type = sig.at("return").get<std::string>();
      for (const json& p : sig.at("params")) {
        fn.signature.params.push_back(
            {p.at("type").get<std::string>(), p.at("name").get<std::string>()});
      }
      if (fn.max_nested_if != MaxNestedIf(fn.slots)) {
        throw Error(ErrorCode::kIo,
                    "max_nested_if disagrees with slots for " + fn.name);
      }
      unit.functions.push_back(std::move(fn));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kIo, std::string("bad skeleton document: ") + e.what());
  }
  return unit;
}

std::vector<TranslationUnit> IngestDirectory(const std::filesystem::path& root,
                                             std::uint64_t type_seed,
                                             std::vector<std::string>* skipped) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(root)) {
    throw Error(ErrorCode::kIo, "not a directory: " + root.string());
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (!entry.is_regular_file()) continue;
    const std::string ext = entry.path().extension().string();
    if (ext == ".c" || ext == ".h") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  std::vector<TranslationUnit> units;
  for (const fs::path& file : files) {
    std::ifstream in(file, std::ios::binary);
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string rel = fs::relative(file, root).generic_string();
    try {
      units.push_back({rel, ExtractSkeletons(buffer.str(), type_seed)});
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kUnbalancedBraces && skipped != nullptr) {
        skipped->push_back(rel);
      }
    }
  }
  return units;
}

}  // namespace fedata
