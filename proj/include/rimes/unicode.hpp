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

#ifndef RIMES_UNICODE_HPP_
#define RIMES_UNICODE_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rimes {

// Base class for every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised on malformed UTF-8. `offset()` is the byte offset of the first
// offending byte in the input that was handed to the decoder.
class EncodingError : public Error {
 public:
  EncodingError(const std::string& what, std::size_t offset)
      : Error(what), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

namespace unicode {

// Decodes UTF-8 into code points; throws EncodingError on invalid input.
std::u32string decode(std::string_view utf8);
std::string encode(std::u32string_view cps);
std::string encode(char32_t cp);

// Returns the byte offset of the first invalid sequence, or npos.
std::size_t find_invalid(std::string_view utf8) noexcept;

std::string nfc(std::string_view utf8);
std::string nfd(std::string_view utf8);
std::string to_lower(std::string_view utf8);

// Splits NFC-normalized text at extended grapheme cluster boundaries.
std::vector<std::string> graphemes(std::string_view utf8);

// First code point of the canonical decomposition: the letter a cluster is
// built on, with combining marks (and precomposed accents) stripped.
char32_t base_char(std::string_view cluster);

bool is_punct(char32_t cp) noexcept;
bool is_letter(char32_t cp) noexcept;
bool is_digit(char32_t cp) noexcept;
bool is_space(char32_t cp) noexcept;
bool is_dash(char32_t cp) noexcept;
bool is_combining(char32_t cp) noexcept;
bool is_control(char32_t cp) noexcept;
bool is_latin_script(char32_t cp) noexcept;
bool is_common_or_inherited_script(char32_t cp) noexcept;

// Quote classification used by the cleaner: single-style quotes and
// apostrophes map to ', double-style quotes and guillemets map to ".
bool is_single_quote(char32_t cp) noexcept;
bool is_double_quote(char32_t cp) noexcept;

std::size_t length(std::string_view utf8);

}  // namespace unicode
}  // namespace rimes

#endif  // RIMES_UNICODE_HPP_
