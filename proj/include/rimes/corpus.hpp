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

#ifndef RIMES_CORPUS_HPP_
#define RIMES_CORPUS_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "rimes/unicode.hpp"

namespace rimes::corpus {

// Normalizes raw poem text: NFC; dashes to '-'; curly quotes, guillemets and
// apostrophes to straight quotes; every kind of space to a single ASCII
// space; non-Latin scripts and control characters removed. Lines are
// trimmed but never merged or dropped. Throws EncodingError on bad UTF-8.
std::string clean_text(std::string_view raw);

// Splits on '\n', dropping a trailing '\r' from each line.
std::vector<std::string> split_lines(std::string_view text);

struct Stanza {
  std::string id;
  std::string source;
  std::vector<std::string> lines;

  friend bool operator==(const Stanza&, const Stanza&) = default;
};

// Blank (or whitespace-only) lines separate stanzas. Ids are
// "<source>#<n>" with n counting from 1.
std::vector<Stanza> split_stanzas(std::span<const std::string> poem_lines,
                                  std::string_view source);

class StopwordList {
 public:
  StopwordList() = default;
  explicit StopwordList(std::unordered_set<std::string> words);

  static StopwordList parse(std::istream& in);
  static StopwordList load(const std::filesystem::path& path);

  // `word` is expected in normalized form.
  bool contains(const std::string& word) const { return words_.contains(word); }
  std::size_t size() const noexcept { return words_.size(); }

 private:
  std::unordered_set<std::string> words_;
};

// Normalized word tokens (letters present) of every line, in order.
std::vector<std::string> word_tokens(const Stanza& stanza);

// Document frequency of normalized word tokens, one document per stanza.
class CorpusStats {
 public:
  static CorpusStats build(std::span<const Stanza> stanzas);

  std::size_t documents() const noexcept { return documents_; }
  std::size_t document_frequency(const std::string& token) const;

  // Smoothed: ln((1 + N) / (1 + df)) + 1, always positive.
  double idf(const std::string& token) const;

 private:
  std::size_t documents_ = 0;
  std::unordered_map<std::string, std::size_t> df_;
};

class KeywordSet {
 public:
  // Throws Error unless 1..4 distinct, lowercase, space-free tokens.
  explicit KeywordSet(std::vector<std::string> keywords);

  static constexpr std::size_t kMaxKeywords = 4;

  const std::vector<std::string>& keywords() const noexcept { return keywords_; }
  std::size_t size() const noexcept { return keywords_.size(); }
  std::string joined() const;

  friend bool operator==(const KeywordSet&, const KeywordSet&) = default;

 private:
  std::vector<std::string> keywords_;
};

class NoKeywordsError : public Error {
 public:
  explicit NoKeywordsError(const std::string& stanza_id)
      : Error("no keywords extractable from stanza " + stanza_id) {}
};

// Ranks candidate words (length >= 3, not stopwords) by tf * idf; ties go
// to the earlier first occurrence, then lexicographic order.
KeywordSet extract_keywords(const Stanza& stanza, const CorpusStats& stats,
                            const StopwordList& stopwords,
                            std::size_t max_k = KeywordSet::kMaxKeywords);

struct TrainingPair {
  std::string input;
  std::string output;

  friend bool operator==(const TrainingPair&, const TrainingPair&) = default;
};

// keywords -> line 1, then line i-1 -> line i.
std::vector<TrainingPair> build_pairs(const Stanza& stanza,
                                      const KeywordSet& keywords);

// Only the verse-to-verse pairs; used for stanzas without keywords.
std::vector<TrainingPair> build_verse_pairs(const Stanza& stanza);

struct Split {
  std::vector<Stanza> train;
  std::vector<Stanza> val;
};

// Seeded shuffle; |train| = floor(ratio * N). Requires 0 < ratio < 1.
Split split_train_val(std::vector<Stanza> stanzas, double ratio,
                      std::uint64_t seed);

// Line-delimited JSON records: {"id","source","lines"}.
void write_stanzas(std::ostream& out, std::span<const Stanza> stanzas);
std::vector<Stanza> read_stanzas(std::istream& in);

struct KeywordRecord {
  std::string stanza_id;
  KeywordSet keywords;
};

// Line-delimited JSON records: {"id","keywords"}.
void write_keywords(std::ostream& out, std::span<const KeywordRecord> records);
std::vector<KeywordRecord> read_keywords(std::istream& in);

// Draws `count` keyword sets of `size` distinct words from the union of the
// training keywords. No drawn set equals (as a set) any training set or an
// earlier draw. Throws Error if the pool cannot supply enough combinations.
std::vector<KeywordSet> sample_unseen_keywords(std::span<const KeywordRecord> training,
                                               std::size_t size, std::size_t count,
                                               std::uint64_t seed);

}  // namespace rimes::corpus

#endif  // RIMES_CORPUS_HPP_
