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

#ifndef RIMES_BACKEND_HPP_
#define RIMES_BACKEND_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rimes/tokenizer.hpp"

namespace rimes::lm {

struct TokenCandidate {
  std::string token;
  double logprob = 0.0;  // natural log

  friend bool operator==(const TokenCandidate&, const TokenCandidate&) = default;
};

// The conditioning sequence handed to a model:
//   escaped input tokens, separator, tokens generated so far.
class LmContext {
 public:
  static LmContext from_text(std::string_view input);
  static LmContext from_tokens(std::span<const std::string> input_tokens);

  // Appends a generated token. Reserved tokens are rejected.
  void push(std::string token);

  const std::vector<std::string>& tokens() const noexcept { return tokens_; }
  std::size_t size() const noexcept { return tokens_.size(); }
  std::size_t input_size() const noexcept { return separator_at_; }
  std::span<const std::string> generated() const noexcept {
    return std::span<const std::string>(tokens_).subspan(separator_at_ + 1);
  }

 private:
  std::vector<std::string> tokens_;
  std::size_t separator_at_ = 0;
};

// Any source of next-token candidates: the built-in n-gram model or a
// bridge process. Implementations return min(k, |V|) candidates sorted by
// logprob descending, ties broken by token ascending.
class LanguageModel {
 public:
  virtual ~LanguageModel() = default;

  virtual std::vector<TokenCandidate> top_k(const LmContext& context,
                                            std::size_t k) const = 0;
  virtual std::string eos_token() const = 0;
  virtual std::string separator_token() const { return std::string(kSeparator); }
};

// Orders candidates by the documented contract (logprob desc, token asc).
void sort_candidates(std::vector<TokenCandidate>& candidates);

}  // namespace rimes::lm

#endif  // RIMES_BACKEND_HPP_
