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

#ifndef FEDATA_TEMPLATES_H_
#define FEDATA_TEMPLATES_H_

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace fedata {

// C text assets from templates/*.c, embedded at build time.
enum class TemplateId { kBugCwe761, kChecksumFn, kInputPreamble, kFiller };

std::string_view TemplateFileName(TemplateId id);

struct TemplateAsset {
  TemplateId id;
  std::string text;
};

TemplateAsset LoadTemplate(TemplateId id);

// Distinct {{name}} placeholders in order of first appearance.
std::vector<std::string> Placeholders(std::string_view text);

// Textual substitution of every {{name}}. Throws Error{kMissingBinding}
// naming the first unresolved placeholder.
std::string Instantiate(const TemplateAsset& asset,
                        const std::map<std::string, std::string>& bindings);

// Marker comment identifying the key line inside the CWE-761 asset.
inline constexpr std::string_view kKeyLineMarker = "/* key line */";

namespace internal {
std::string_view EmbeddedTemplateText(TemplateId id);
}  // namespace internal

}  // namespace fedata

#endif  // FEDATA_TEMPLATES_H_
