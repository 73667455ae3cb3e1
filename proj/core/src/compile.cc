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

#include "fedata/compile.h"

#include <fcntl.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <atomic>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "fedata/error.h"

namespace fedata {
namespace {

std::string Quote(const std::string& s) {
  std::string out = "'";
  for (char ch : s) {
    if (ch == '\'') {
      out += "'\\''";
    } else {
      out += ch;
    }
  }
  return out + "'";
}

std::string ReplaceAll(std::string text, const std::string& from,
                       const std::string& to) {
  std::size_t pos = 0;
  while ((pos = text.find(from, pos)) != std::string::npos) {
    text.replace(pos, from.size(), to);
    pos += to.size();
  }
  return text;
}

// Runs a shell command, returning its exit status and combined output.
int Shell(const std::string& command, std::string* output) {
  FILE* pipe = popen((command + " 2>&1").c_str(), "r");
  if (!pipe) throw Error(ErrorCode::kIo, "popen failed");
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof(buf), pipe)) > 0) output->append(buf, n);
  const int status = pclose(pipe);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

bool CompilerAvailable(const CompilerConfig& config) {
  std::istringstream words(config.command);
  std::string first;
  words >> first;
  if (first.empty()) return false;
  std::string ignored;
  return Shell("command -v " + Quote(first), &ignored) == 0;
}

std::filesystem::path CompileFile(const std::filesystem::path& source,
                                  const std::filesystem::path& output,
                                  const CompilerConfig& config, bool hardened) {
  std::string command = ReplaceAll(config.command, "{src}", Quote(source.string()));
  command = ReplaceAll(command, "{out}", Quote(output.string()));
  if (hardened) command += " " + config.hardened_flags;
  std::string diagnostics;
  if (Shell(command, &diagnostics) != 0) {
    throw Error(ErrorCode::kCompileFailed, source.string() + ":\n" + diagnostics);
  }
  return output;
}

std::filesystem::path Compile(const GeneratedProgram& program,
                              const std::filesystem::path& dir,
                              const CompilerConfig& config, bool hardened) {
  std::filesystem::create_directories(dir);
  const std::filesystem::path source = dir / (program.program_name + ".c");
  {
    std::ofstream out(source, std::ios::binary);
    out << program.source;
    if (!out) throw Error(ErrorCode::kIo, "cannot write " + source.string());
  }
  const std::filesystem::path binary =
      dir / (program.program_name + (hardened ? ".hardened" : ""));
  return CompileFile(source, binary, config, hardened);
}

std::vector<std::filesystem::path> CompileBatch(
    std::span<const GeneratedProgram> programs, const std::filesystem::path& dir,
    const CompilerConfig& config, bool hardened) {
  std::vector<std::filesystem::path> results(programs.size());
  std::vector<std::exception_ptr> errors(programs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < programs.size();) {
      try {
        results[i] = Compile(programs[i], dir, config, hardened);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t n = std::max<std::size_t>(1, std::min(config.pool_size, programs.size()));
  std::vector<std::thread> threads;
  for (std::size_t t = 0; t < n; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

RunResult RunWithInput(const std::filesystem::path& binary,
                       std::span<const std::uint8_t> input) {
  int in_pipe[2];
  if (pipe(in_pipe) != 0) throw Error(ErrorCode::kIo, "pipe failed");
  const pid_t pid = fork();
  if (pid < 0) throw Error(ErrorCode::kIo, "fork failed");
  if (pid == 0) {
    dup2(in_pipe[0], STDIN_FILENO);
    close(in_pipe[0]);
    close(in_pipe[1]);
    const int devnull = open("/dev/null", O_WRONLY);
    if (devnull >= 0) {
      dup2(devnull, STDOUT_FILENO);
      dup2(devnull, STDERR_FILENO);
    }
    const std::string path = binary.string();
    execl(path.c_str(), path.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  close(in_pipe[0]);
  // The child may exit before reading everything.
  struct sigaction ignore {}, previous {};
  ignore.sa_handler = SIG_IGN;
  sigaction(SIGPIPE, &ignore, &previous);
  std::size_t written = 0;
  while (written < input.size()) {
    const ssize_t n = write(in_pipe[1], input.data() + written, input.size() - written);
    if (n <= 0) break;
    written += static_cast<std::size_t>(n);
  }
  close(in_pipe[1]);
  sigaction(SIGPIPE, &previous, nullptr);
  int status = 0;
  while (waitpid(pid, &status, 0) < 0 && errno == EINTR) {
  }
  RunResult result;
  if (WIFSIGNALED(status)) {
    result.signal = WTERMSIG(status);
  } else {
    result.exit_code = WEXITSTATUS(status);
  }
  return result;
}

}  // namespace fedata
