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

#ifndef RIMES_BRIDGE_HPP_
#define RIMES_BRIDGE_HPP_

#include <chrono>
#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <sys/types.h>

#include "rimes/backend.hpp"
#include "rimes/unicode.hpp"

namespace rimes::lm {

// `request_id()` is -1 when the failure is not tied to a request
// (spawning, transport before the handshake).
class BridgeError : public Error {
 public:
  BridgeError(const std::string& what, std::int64_t request_id)
      : Error(what), request_id_(request_id) {}
  std::int64_t request_id() const noexcept { return request_id_; }

 private:
  std::int64_t request_id_;
};

// Client for an external model process speaking one JSON object per line
// over its stdin/stdout:
//
//   -> {"id":1,"op":"hello"}
//   <- {"id":1,"name":"...","version":"...","eos_token":"..."}
//   -> {"id":2,"op":"top_k","context":["...",...],"k":10}
//   <- {"id":2,"candidates":[{"token":"...","logprob":-1.23},...]}
//   <- {"id":N,"error":"..."}
//
// The child is started with `/bin/sh -c <command>` and owned by the client.
// Requests are serialized: one in flight at a time. SIGPIPE is ignored
// process-wide once a client is connected.
class BridgeClient final : public LanguageModel {
 public:
  static constexpr std::chrono::milliseconds kDefaultTimeout{30'000};

  static std::unique_ptr<BridgeClient> connect(
      const std::string& command,
      std::chrono::milliseconds timeout = kDefaultTimeout);

  ~BridgeClient() override;
  BridgeClient(const BridgeClient&) = delete;
  BridgeClient& operator=(const BridgeClient&) = delete;

  std::vector<TokenCandidate> top_k(const LmContext& context,
                                    std::size_t k) const override;
  std::string eos_token() const override { return eos_token_; }

  const std::string& name() const noexcept { return name_; }
  const std::string& version() const noexcept { return version_; }

 private:
  BridgeClient(pid_t pid, int to_child, int from_child,
               std::chrono::milliseconds timeout);

  void handshake();
  void send_line(const std::string& line, std::int64_t id) const;
  std::string read_line(std::int64_t id) const;

  pid_t pid_;
  int to_child_;
  int from_child_;
  std::chrono::milliseconds timeout_;
  std::string name_;
  std::string version_;
  std::string eos_token_;

  mutable std::mutex mu_;
  mutable std::string buffer_;
  mutable std::int64_t next_id_ = 1;
  mutable bool reaped_ = false;
};

}  // namespace rimes::lm

#endif  // RIMES_BRIDGE_HPP_
