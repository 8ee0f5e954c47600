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

#include "rimes/backend.hpp"

#include <algorithm>

#include "rimes/unicode.hpp"

namespace rimes::lm {

LmContext LmContext::from_text(std::string_view input) {
  const auto tokens = tokenize(input);
  return from_tokens(tokens);
}

LmContext LmContext::from_tokens(std::span<const std::string> input_tokens) {
  LmContext ctx;
  ctx.tokens_.reserve(input_tokens.size() + 24);
  for (const auto& t : input_tokens) ctx.tokens_.push_back(escape(t));
  ctx.separator_at_ = ctx.tokens_.size();
  ctx.tokens_.emplace_back(kSeparator);
  return ctx;
}

void LmContext::push(std::string token) {
  if (is_reserved(token)) {
    throw Error("reserved token '" + token + "' cannot extend a context");
  }
  tokens_.push_back(std::move(token));
}

void sort_candidates(std::vector<TokenCandidate>& candidates) {
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const TokenCandidate& a, const TokenCandidate& b) {
                     if (a.logprob != b.logprob) return a.logprob > b.logprob;
                     return a.token < b.token;
                   });
}

}  // namespace rimes::lm
