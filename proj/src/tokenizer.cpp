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

#include "rimes/tokenizer.hpp"

#include <algorithm>

#include "rimes/unicode.hpp"

namespace rimes::lm {
namespace {

bool is_apostrophe(char32_t c) { return c == U'\'' || c == U'’'; }

void split_chunk(std::u32string_view chunk, std::vector<std::string>& out) {
  std::size_t b = 0;
  std::size_t e = chunk.size();
  while (b < e && unicode::is_punct(chunk[b])) {
    out.push_back(unicode::encode(chunk[b]));
    ++b;
  }
  std::vector<std::string> trailing;
  while (e > b && unicode::is_punct(chunk[e - 1])) {
    // A final apostrophe right after a letter is an elision ("l'"), not
    // punctuation.
    if (is_apostrophe(chunk[e - 1]) && e - 1 > b &&
        unicode::is_letter(chunk[e - 2])) {
      break;
    }
    trailing.push_back(unicode::encode(chunk[e - 1]));
    --e;
  }
  std::size_t start = b;
  for (std::size_t i = b; i < e; ++i) {
    if (is_apostrophe(chunk[i]) && i + 1 < e) {
      out.push_back(unicode::encode(chunk.substr(start, i + 1 - start)));
      start = i + 1;
    }
  }
  if (start < e) out.push_back(unicode::encode(chunk.substr(start, e - start)));
  out.insert(out.end(), trailing.rbegin(), trailing.rend());
}

std::string_view strip_backslashes(std::string_view t) {
  const auto n = t.find_first_not_of('\\');
  return n == std::string_view::npos ? std::string_view{} : t.substr(n);
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  const std::u32string cps = unicode::decode(text);
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < cps.size()) {
    while (i < cps.size() && unicode::is_space(cps[i])) ++i;
    std::size_t j = i;
    while (j < cps.size() && !unicode::is_space(cps[j])) ++j;
    if (j > i) split_chunk(std::u32string_view(cps).substr(i, j - i), out);
    i = j;
  }
  return out;
}

bool is_reserved(std::string_view token) noexcept {
  return token == kSeparator || token == kEndOfSequence;
}

std::string escape(std::string_view token) {
  const std::string_view core = strip_backslashes(token);
  if (is_reserved(core)) return "\\" + std::string(token);
  return std::string(token);
}

std::string unescape(std::string_view token) {
  const std::string_view core = strip_backslashes(token);
  if (core.size() < token.size() && is_reserved(core)) {
    return std::string(token.substr(1));
  }
  return std::string(token);
}

bool is_punctuation_token(std::string_view token) {
  if (token.empty()) return false;
  const std::u32string cps = unicode::decode(token);
  return std::all_of(cps.begin(), cps.end(),
                     [](char32_t c) { return unicode::is_punct(c); });
}

std::string detokenize(std::span<const std::string> tokens) {
  std::string out;
  bool glue_next = true;
  for (const auto& raw : tokens) {
    const std::string tok = unescape(raw);
    if (!glue_next && !is_punctuation_token(tok)) out += ' ';
    out += tok;
    const std::u32string cps = unicode::decode(tok);
    glue_next = cps.size() > 1 && is_apostrophe(cps.back()) &&
                unicode::is_letter(cps[cps.size() - 2]);
  }
  return out;
}

}  // namespace rimes::lm
