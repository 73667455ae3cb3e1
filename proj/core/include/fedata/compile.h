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

#ifndef FEDATA_COMPILE_H_
#define FEDATA_COMPILE_H_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fedata/codegen.h"
#include "fedata/hex.h"

namespace fedata {

struct CompilerConfig {
  // {src} and {out} are replaced with quoted paths.
  std::string command = "cc -std=c99 -O0 -w {src} -o {out}";
  std::string hardened_flags = "-fsanitize=address -fno-omit-frame-pointer -g";
  std::size_t pool_size = 4;
};

// Whether the first word of config.command resolves to an executable.
bool CompilerAvailable(const CompilerConfig& config = {});

// Writes <dir>/<name>.c and builds <dir>/<name> (or <name>.hardened).
// Throws Error{kCompileFailed} carrying the compiler diagnostics.
std::filesystem::path Compile(const GeneratedProgram& program,
                              const std::filesystem::path& dir,
                              const CompilerConfig& config, bool hardened);

// Builds a C file already on disk.
std::filesystem::path CompileFile(const std::filesystem::path& source,
                                  const std::filesystem::path& output,
                                  const CompilerConfig& config, bool hardened);

// At most config.pool_size compilers run at once. Results follow input order.
std::vector<std::filesystem::path> CompileBatch(
    std::span<const GeneratedProgram> programs, const std::filesystem::path& dir,
    const CompilerConfig& config, bool hardened);

struct RunResult {
  int exit_code = 0;                // valid when !signaled
  std::optional<int> signal;        // terminating signal, if any
  bool Abnormal() const { return signal.has_value() || exit_code != 0; }
};

// Runs `binary` with `input` on stdin, stdout/stderr discarded.
RunResult RunWithInput(const std::filesystem::path& binary,
                       std::span<const std::uint8_t> input);

}  // namespace fedata

#endif  // FEDATA_COMPILE_H_
