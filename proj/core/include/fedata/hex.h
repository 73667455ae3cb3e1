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

#ifndef FEDATA_HEX_H_
#define FEDATA_HEX_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fedata {

using Bytes = std::vector<std::uint8_t>;

// Lowercase hex, two digits per byte.
std::string HexEncode(std::span<const std::uint8_t> bytes);

// Accepts upper or lower case. nullopt on odd length or a non-hex digit.
std::optional<Bytes> HexDecode(std::string_view text);

}  // namespace fedata

#endif  // FEDATA_HEX_H_
