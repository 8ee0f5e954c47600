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

#ifndef RIMES_TOKENIZER_HPP_
#define RIMES_TOKENIZER_HPP_

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rimes::lm {

inline constexpr std::string_view kSeparator = "<sep>";
inline constexpr std::string_view kEndOfSequence = "</s>";

// Word-level tokenizer for cleaned verse text. Splits on whitespace, peels
// leading and trailing punctuation into their own tokens and splits after
// elided clitics: "l'amant," -> ["l'", "amant", ","]. Case is preserved.
std::vector<std::string> tokenize(std::string_view text);

// Reserved spellings in user text get a leading backslash so they can never
// collide with the separator or end-of-sequence tokens. Injective:
// unescape(escape(t)) == t for every t.
std::string escape(std::string_view token);
std::string unescape(std::string_view token);

bool is_reserved(std::string_view token) noexcept;

// True when every code point of the token is punctuation.
bool is_punctuation_token(std::string_view token);

// Space-joins tokens, attaching punctuation to the token before it and
// clitics ending in an apostrophe to the token after. Unescapes.
std::string detokenize(std::span<const std::string> tokens);

}  // namespace rimes::lm

#endif  // RIMES_TOKENIZER_HPP_
