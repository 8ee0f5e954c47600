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

#include "rimes/unicode.hpp"

#include <memory>

#include <unicode/brkiter.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/uscript.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

namespace rimes::unicode {
namespace {

icu::UnicodeString to_icu(std::string_view utf8) {
  return icu::UnicodeString::fromUTF8(
      icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size())));
}

std::string from_icu(const icu::UnicodeString& s) {
  std::string out;
  s.toUTF8String(out);
  return out;
}

std::string normalize(const icu::Normalizer2* norm, std::string_view utf8) {
  const std::size_t bad = find_invalid(utf8);
  if (bad != std::string_view::npos) {
    throw EncodingError("invalid UTF-8 at byte " + std::to_string(bad), bad);
  }
  UErrorCode status = U_ZERO_ERROR;
  icu::UnicodeString out = norm->normalize(to_icu(utf8), status);
  if (U_FAILURE(status)) {
    throw Error(std::string("normalization failed: ") + u_errorName(status));
  }
  return from_icu(out);
}

const icu::Normalizer2* nfc_instance() {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* n = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) throw Error("ICU NFC normalizer unavailable");
  return n;
}

const icu::Normalizer2* nfd_instance() {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* n = icu::Normalizer2::getNFDInstance(status);
  if (U_FAILURE(status)) throw Error("ICU NFD normalizer unavailable");
  return n;
}

icu::BreakIterator& cluster_iterator() {
  // BreakIterator is not thread-safe; one per thread.
  thread_local std::unique_ptr<icu::BreakIterator> it = [] {
    UErrorCode status = U_ZERO_ERROR;
    std::unique_ptr<icu::BreakIterator> bi(
        icu::BreakIterator::createCharacterInstance(icu::Locale::getRoot(),
                                                    status));
    if (U_FAILURE(status) || !bi) {
      throw Error("ICU character break iterator unavailable");
    }
    return bi;
  }();
  return *it;
}

}  // namespace

std::size_t find_invalid(std::string_view utf8) noexcept {
  const auto* s = reinterpret_cast<const uint8_t*>(utf8.data());
  const auto n = static_cast<int32_t>(utf8.size());
  int32_t i = 0;
  while (i < n) {
    const int32_t start = i;
    UChar32 c;
    U8_NEXT(s, i, n, c);
    if (c < 0) return static_cast<std::size_t>(start);
  }
  return std::string_view::npos;
}

std::u32string decode(std::string_view utf8) {
  std::u32string out;
  out.reserve(utf8.size());
  const auto* s = reinterpret_cast<const uint8_t*>(utf8.data());
  const auto n = static_cast<int32_t>(utf8.size());
  int32_t i = 0;
  while (i < n) {
    const int32_t start = i;
    UChar32 c;
    U8_NEXT(s, i, n, c);
    if (c < 0) {
      throw EncodingError("invalid UTF-8 at byte " + std::to_string(start),
                          static_cast<std::size_t>(start));
    }
    out.push_back(static_cast<char32_t>(c));
  }
  return out;
}

std::string encode(char32_t cp) {
  char buf[U8_MAX_LENGTH];
  int32_t len = 0;
  UBool err = false;
  U8_APPEND(reinterpret_cast<uint8_t*>(buf), len, U8_MAX_LENGTH,
            static_cast<UChar32>(cp), err);
  if (err) throw Error("cannot encode code point " + std::to_string(cp));
  return std::string(buf, static_cast<std::size_t>(len));
}

std::string encode(std::u32string_view cps) {
  std::string out;
  out.reserve(cps.size());
  for (char32_t c : cps) out += encode(c);
  return out;
}

std::string nfc(std::string_view utf8) { return normalize(nfc_instance(), utf8); }
std::string nfd(std::string_view utf8) { return normalize(nfd_instance(), utf8); }

std::string to_lower(std::string_view utf8) {
  icu::UnicodeString s = to_icu(utf8);
  s.toLower(icu::Locale::getRoot());
  return from_icu(s);
}

std::vector<std::string> graphemes(std::string_view utf8) {
  std::vector<std::string> out;
  if (utf8.empty()) return out;
  const icu::UnicodeString text = to_icu(nfc(utf8));
  icu::BreakIterator& it = cluster_iterator();
  it.setText(text);
  int32_t start = it.first();
  for (int32_t end = it.next(); end != icu::BreakIterator::DONE;
       start = end, end = it.next()) {
    out.push_back(from_icu(text.tempSubStringBetween(start, end)));
  }
  return out;
}

char32_t base_char(std::string_view cluster) {
  const std::u32string cps = decode(nfd(cluster));
  return cps.empty() ? U'\0' : cps.front();
}

bool is_punct(char32_t cp) noexcept { return u_ispunct(static_cast<UChar32>(cp)); }
bool is_letter(char32_t cp) noexcept { return u_isalpha(static_cast<UChar32>(cp)); }
bool is_digit(char32_t cp) noexcept { return u_isdigit(static_cast<UChar32>(cp)); }

bool is_space(char32_t cp) noexcept {
  return cp == U'\t' || u_isUWhiteSpace(static_cast<UChar32>(cp)) ||
         u_charType(static_cast<UChar32>(cp)) == U_SPACE_SEPARATOR;
}

bool is_dash(char32_t cp) noexcept {
  return u_charType(static_cast<UChar32>(cp)) == U_DASH_PUNCTUATION ||
         cp == U'−' || cp == U'⁃' || cp == U'﹣' ||
         cp == U'－';
}

bool is_combining(char32_t cp) noexcept {
  return (U_GET_GC_MASK(static_cast<UChar32>(cp)) & U_GC_M_MASK) != 0;
}

bool is_control(char32_t cp) noexcept {
  const auto t = u_charType(static_cast<UChar32>(cp));
  return t == U_CONTROL_CHAR || t == U_FORMAT_CHAR ||
         t == U_UNASSIGNED || t == U_SURROGATE || t == U_PRIVATE_USE_CHAR;
}

bool is_latin_script(char32_t cp) noexcept {
  UErrorCode status = U_ZERO_ERROR;
  return uscript_getScript(static_cast<UChar32>(cp), &status) == USCRIPT_LATIN;
}

bool is_common_or_inherited_script(char32_t cp) noexcept {
  UErrorCode status = U_ZERO_ERROR;
  const UScriptCode sc = uscript_getScript(static_cast<UChar32>(cp), &status);
  return sc == USCRIPT_COMMON || sc == USCRIPT_INHERITED;
}

bool is_single_quote(char32_t cp) noexcept {
  switch (cp) {
    case U'‘': case U'’': case U'‚': case U'‛':
    case U'′': case U'‵': case U'‹': case U'›':
    case U'ʼ': case U'＇':
      return true;
    default:
      return false;
  }
}

bool is_double_quote(char32_t cp) noexcept {
  switch (cp) {
    case U'“': case U'”': case U'„': case U'‟':
    case U'″': case U'‶': case U'«': case U'»':
    case U'〝': case U'〞': case U'〟': case U'＂':
      return true;
    default:
      return cp != U'"' && cp != U'\'' && !is_single_quote(cp) &&
             u_hasBinaryProperty(static_cast<UChar32>(cp), UCHAR_QUOTATION_MARK);
  }
}

std::size_t length(std::string_view utf8) { return decode(utf8).size(); }

}  // namespace rimes::unicode
