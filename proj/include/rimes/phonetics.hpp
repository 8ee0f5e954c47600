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

#ifndef RIMES_PHONETICS_HPP_
#define RIMES_PHONETICS_HPP_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rimes/unicode.hpp"

namespace rimes::phonetics {

// A pronunciation split into phonetic segments. A segment is one extended
// grapheme cluster, so a nasal vowel written with a combining tilde (ɔ̃)
// is a single segment.
class IpaString {
 public:
  IpaString() = default;
  explicit IpaString(std::vector<std::string> segments);

  std::span<const std::string> segments() const noexcept { return segments_; }
  std::size_t size() const noexcept { return segments_.size(); }
  bool empty() const noexcept { return segments_.empty(); }
  const std::string& operator[](std::size_t i) const { return segments_[i]; }

  // Base letter of segment i, combining marks stripped.
  char32_t base(std::size_t i) const { return bases_[i]; }

  // Drops the first n segments (clamped to size()).
  IpaString drop_front(std::size_t n) const;

  std::string str() const;

  friend bool operator==(const IpaString& a, const IpaString& b) {
    return a.segments_ == b.segments_;
  }

 private:
  std::vector<std::string> segments_;
  std::vector<char32_t> bases_;
};

// NFC-normalizes and splits at grapheme cluster boundaries.
IpaString parse_ipa(std::string_view raw);

class VowelSet {
 public:
  // Throws Error if `vowels` is empty.
  explicit VowelSet(std::set<char32_t> vowels);

  // One IPA base character per line; '#' comments and blank lines skipped.
  static VowelSet parse(std::istream& in);
  static VowelSet load(const std::filesystem::path& path);

  bool contains(char32_t base) const { return vowels_.contains(base); }
  bool is_vowel(const IpaString& s, std::size_t i) const {
    return contains(s.base(i));
  }
  const std::set<char32_t>& members() const noexcept { return vowels_; }

 private:
  std::set<char32_t> vowels_;
};

struct RhymeRelation {
  bool full = false;
  bool assonance = false;
  bool consonance = false;

  bool any() const noexcept { return full || assonance || consonance; }
  friend bool operator==(const RhymeRelation&, const RhymeRelation&) = default;
};

// Trims whole segments from the front of the longer string until both have
// the same length. The shorter one is returned unchanged.
std::pair<IpaString, IpaString> equalize(const IpaString& a, const IpaString& b);

// Full rhyme, assonance and consonance between two pronunciations, computed
// on the equalized pair. Identical equalized strings never rhyme.
RhymeRelation classify(const IpaString& a, const IpaString& b,
                       const VowelSet& vowels);

// Lookup key for a verse token: NFC, lowercased, leading and trailing
// punctuation stripped. May return an empty string (pure punctuation).
std::string normalize_token(std::string_view token);

class LexiconError : public Error {
 public:
  LexiconError(const std::string& what, std::size_t line)
      : Error(what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class Lexicon {
 public:
  // `token` is normalized before insertion; a later insert overwrites.
  void insert(std::string_view token, IpaString pronunciation);

  // nullptr when the token has no pronunciation.
  const IpaString* find(std::string_view token) const;

  std::size_t size() const noexcept { return entries_.size(); }

 private:
  std::unordered_map<std::string, IpaString> entries_;
};

// token<TAB>ipa per line, UTF-8. Throws LexiconError naming the line.
Lexicon load_lexicon(std::istream& in);
Lexicon load_lexicon(const std::filesystem::path& path);

// classify(...).any() on the lexicon pronunciations of both tokens; false
// if either is unknown or both normalize to the same key.
bool rhymes_any(std::string_view token_a, std::string_view token_b,
                const Lexicon& lex, const VowelSet& vowels);

}  // namespace rimes::phonetics

#endif  // RIMES_PHONETICS_HPP_
