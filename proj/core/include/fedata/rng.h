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

#ifndef FEDATA_RNG_H_
#define FEDATA_RNG_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>

namespace fedata {

// Seeded generator with platform-independent bounded draws.
//
// std::uniform_int_distribution is implementation-defined, so corpora built
// with different standard libraries would diverge. All draws here go through
// rejection sampling on the raw mt19937_64 stream instead.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t Next() { return engine_(); }

  // Uniform in [0, bound). `bound` must be positive.
  std::uint64_t Below(std::uint64_t bound);

  // Uniform in [lo, hi], inclusive on both ends.
  std::int64_t Between(std::int64_t lo, std::int64_t hi);

  std::uint8_t Byte() { return static_cast<std::uint8_t>(engine_() >> 56); }

  // Fork a child generator whose stream depends on this one and `salt`.
  Rng Fork(std::uint64_t salt);

 private:
  std::mt19937_64 engine_;
};

// SplitMix64 finalizer; used to derive independent seeds.
std::uint64_t MixSeed(std::uint64_t a, std::uint64_t b);

// FNV-1a over bytes.
std::uint64_t HashString(std::string_view text);

}  // namespace fedata

#endif  // FEDATA_RNG_H_
