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

#include "fedata/templates.h"

#include <algorithm>
#include <string>
#include <vector>

#include "fedata/error.h"

namespace fedata {

std::string_view TemplateFileName(TemplateId id) {
  switch (id) {
    case TemplateId::kBugCwe761: return "bug_cwe761.c";
    case TemplateId::kChecksumFn: return "checksum_fn.c";
    case TemplateId::kInputPreamble: return "input_preamble.c";
    case TemplateId::kFiller: return "filler.c";
  }
  return "";
}

TemplateAsset LoadTemplate(TemplateId id) {
  return {id, std::string(internal::EmbeddedTemplateText(id))};
}

std::vector<std::string> Placeholders(std::string_view text) {
  std::vector<std::string> names;
  std::size_t pos = 0;
  while ((pos = text.find("{{", pos)) != std::string_view::npos) {
    const std::size_t close = text.find("}}", pos + 2);
    if (close == std::string_view::npos) break;
    std::string name(text.substr(pos + 2, close - pos - 2));
    if (std::find(names.begin(), names.end(), name) == names.end()) {
      names.push_back(std::move(name));
    }
    pos = close + 2;
  }
  return names;
}

std::string Instantiate(const TemplateAsset& asset,
                        const std::map<std::string, std::string>& bindings) {
  std::string out;
  out.reserve(asset.text.size());
  std::string_view text = asset.text;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t open = text.find("{{", pos);
    const std::size_t close =
        open == std::string_view::npos ? open : text.find("}}", open + 2);
    if (close == std::string_view::npos) {
      out.append(text.substr(pos));
      break;
    }
    out.append(text.substr(pos, open - pos));
    const std::string name(text.substr(open + 2, close - open - 2));
    auto it = bindings.find(name);
    if (it == bindings.end()) {
      throw Error(ErrorCode::kMissingBinding,
                  "{{" + name + "}} in " + std::string(TemplateFileName(asset.id)));
    }
    out.append(it->second);
    pos = close + 2;
  }
  return out;
}

}  // namespace fedata
