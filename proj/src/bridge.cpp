// Copyright 2026 The Rimes Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rimes/bridge.hpp"

#include <cerrno>
#include <cmath>
#include <csignal>
#include <cstring>
#include <thread>

#include <fcntl.h>
#include <poll.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <json.hpp>

extern char** environ;

namespace rimes::lm {
namespace {

using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

std::string sys_error(const char* what) {
  return std::string(what) + ": " + std::strerror(errno);
}

std::string excerpt(const std::string& line) {
  constexpr std::size_t kMax = 200;
  return line.size() <= kMax ? line : line.substr(0, kMax) + "...";
}

}  // namespace

std::unique_ptr<BridgeClient> BridgeClient::connect(
    const std::string& command, std::chrono::milliseconds timeout) {
  std::signal(SIGPIPE, SIG_IGN);

  int in_pipe[2];   // parent -> child stdin
  int out_pipe[2];  // child stdout -> parent
  if (pipe2(in_pipe, O_CLOEXEC) != 0) throw BridgeError(sys_error("pipe"), -1);
  if (pipe2(out_pipe, O_CLOEXEC) != 0) {
    close(in_pipe[0]);
    close(in_pipe[1]);
    throw BridgeError(sys_error("pipe"), -1);
  }

  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_adddup2(&actions, in_pipe[0], STDIN_FILENO);
  posix_spawn_file_actions_adddup2(&actions, out_pipe[1], STDOUT_FILENO);

  // Own process group, so the shell and whatever it starts go down together.
  posix_spawnattr_t attr;
  posix_spawnattr_init(&attr);
  posix_spawnattr_setflags(&attr, POSIX_SPAWN_SETPGROUP);
  posix_spawnattr_setpgroup(&attr, 0);

  const char* argv[] = {"sh", "-c", command.c_str(), nullptr};
  pid_t pid = -1;
  const int rc = posix_spawn(&pid, "/bin/sh", &actions, &attr,
                             const_cast<char* const*>(argv), environ);
  posix_spawnattr_destroy(&attr);
  posix_spawn_file_actions_destroy(&actions);
  close(in_pipe[0]);
  close(out_pipe[1]);
  if (rc != 0) {
    close(in_pipe[1]);
    close(out_pipe[0]);
    throw BridgeError(std::string("cannot spawn bridge: ") + std::strerror(rc), -1);
  }

  std::unique_ptr<BridgeClient> client(
      new BridgeClient(pid, in_pipe[1], out_pipe[0], timeout));
  client->handshake();
  return client;
}

BridgeClient::BridgeClient(pid_t pid, int to_child, int from_child,
                           std::chrono::milliseconds timeout)
    : pid_(pid), to_child_(to_child), from_child_(from_child), timeout_(timeout) {}

BridgeClient::~BridgeClient() {
  if (to_child_ >= 0) close(to_child_);
  if (from_child_ >= 0) close(from_child_);
  // Closing stdin is the shutdown signal; give the child a moment to exit.
  for (int i = 0; i < 50 && !reaped_; ++i) {
    if (waitpid(pid_, nullptr, WNOHANG) == pid_) reaped_ = true;
    if (!reaped_) std::this_thread::sleep_for(std::chrono::milliseconds(20));
  }
  kill(-pid_, SIGKILL);
  if (!reaped_) waitpid(pid_, nullptr, 0);
}

void BridgeClient::send_line(const std::string& line, std::int64_t id) const {
  std::string data = line + '\n';
  std::size_t off = 0;
  while (off < data.size()) {
    const ssize_t n = write(to_child_, data.data() + off, data.size() - off);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw BridgeError(sys_error("write to bridge failed") +
                            " (request " + std::to_string(id) + ")",
                        id);
    }
    off += static_cast<std::size_t>(n);
  }
}

std::string BridgeClient::read_line(std::int64_t id) const {
  const auto deadline = Clock::now() + timeout_;
  while (true) {
    const auto nl = buffer_.find('\n');
    if (nl != std::string::npos) {
      std::string line = buffer_.substr(0, nl);
      buffer_.erase(0, nl + 1);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      return line;
    }
    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
        deadline - Clock::now());
    if (left.count() <= 0) {
      throw BridgeError("bridge timed out after " +
                            std::to_string(timeout_.count()) + " ms (request " +
                            std::to_string(id) + ")",
                        id);
    }
    pollfd pfd{from_child_, POLLIN, 0};
    const int pr = poll(&pfd, 1, static_cast<int>(left.count()));
    if (pr < 0) {
      if (errno == EINTR) continue;
      throw BridgeError(sys_error("poll on bridge failed"), id);
    }
    if (pr == 0) continue;
    char chunk[4096];
    const ssize_t n = read(from_child_, chunk, sizeof chunk);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw BridgeError(sys_error("read from bridge failed"), id);
    }
    if (n == 0) {
      int status = 0;
      std::string detail;
      for (int i = 0; i < 25 && !reaped_; ++i) {
        if (waitpid(pid_, &status, WNOHANG) == pid_) {
          reaped_ = true;
          if (WIFEXITED(status)) {
            detail = " with status " + std::to_string(WEXITSTATUS(status));
          }
        } else {
          std::this_thread::sleep_for(std::chrono::milliseconds(8));
        }
      }
      throw BridgeError("bridge process exited" + detail + " (request " +
                            std::to_string(id) + ")",
                        id);
    }
    buffer_.append(chunk, static_cast<std::size_t>(n));
  }
}

void BridgeClient::handshake() {
  std::lock_guard lock(mu_);
  const std::int64_t id = next_id_++;
  send_line(json{{"id", id}, {"op", "hello"}}.dump(), id);
  const std::string line = read_line(id);
  auto bad = [&](const std::string& why) -> BridgeError {
    return BridgeError("malformed hello (" + why + "): " + excerpt(line), id);
  };
  json j;
  try {
    j = json::parse(line);
  } catch (const json::exception&) {
    throw bad("not JSON");
  }
  if (!j.is_object()) throw bad("not an object");
  if (j.contains("error") && j["error"].is_string()) {
    throw BridgeError("bridge refused hello: " + j["error"].get<std::string>(), id);
  }
  if (!j.contains("id") || !j["id"].is_number_integer() || j["id"].get<std::int64_t>() != id) {
    throw bad("id mismatch");
  }
  for (const char* key : {"name", "version", "eos_token"}) {
    if (!j.contains(key) || !j[key].is_string()) throw bad(std::string("missing ") + key);
  }
  name_ = j["name"].get<std::string>();
  version_ = j["version"].get<std::string>();
  eos_token_ = j["eos_token"].get<std::string>();
  if (eos_token_.empty()) throw bad("empty eos_token");
}

std::vector<TokenCandidate> BridgeClient::top_k(const LmContext& context,
                                                std::size_t k) const {
  if (k == 0) throw Error("top_k requires k >= 1");
  std::lock_guard lock(mu_);
  const std::int64_t id = next_id_++;
  send_line(json{{"id", id}, {"op", "top_k"}, {"context", context.tokens()}, {"k", k}}
                .dump(),
            id);
  const std::string line = read_line(id);
  auto bad = [&](const std::string& why) -> BridgeError {
    return BridgeError("bad top_k response to request " + std::to_string(id) +
                           " (" + why + "): " + excerpt(line),
                       id);
  };
  json j;
  try {
    j = json::parse(line);
  } catch (const json::exception&) {
    throw bad("not JSON");
  }
  if (!j.is_object()) throw bad("not an object");
  if (!j.contains("id") || !j["id"].is_number_integer() || j["id"].get<std::int64_t>() != id) {
    throw bad("id mismatch");
  }
  if (j.contains("error")) {
    throw BridgeError("bridge error on request " + std::to_string(id) + ": " +
                          (j["error"].is_string() ? j["error"].get<std::string>()
                                                  : j["error"].dump()),
                      id);
  }
  if (!j.contains("candidates") || !j["candidates"].is_array()) {
    throw bad("missing candidates");
  }
  const auto& arr = j["candidates"];
  if (arr.empty() || arr.size() > k) throw bad("candidate count out of range");
  std::vector<TokenCandidate> out;
  out.reserve(arr.size());
  for (const auto& c : arr) {
    if (!c.is_object() || !c.contains("token") || !c["token"].is_string() ||
        !c.contains("logprob") || !c["logprob"].is_number()) {
      throw bad("malformed candidate");
    }
    const double lp = c["logprob"].get<double>();
    if (!std::isfinite(lp)) throw bad("non-finite logprob");
    if (!out.empty() && lp > out.back().logprob) throw bad("logprobs not sorted");
    out.push_back({c["token"].get<std::string>(), lp});
  }
  sort_candidates(out);
  return out;
}

}  // namespace rimes::lm
