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

#include "rimes/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>

#include <json.hpp>

#include "rimes/phonetics.hpp"
#include "rimes/random.hpp"
#include "rimes/tokenizer.hpp"

namespace rimes::corpus {
namespace {

using json = nlohmann::json;

std::string clean_line(std::string_view line) {
  const std::u32string cps = unicode::decode(unicode::nfc(line));
  std::u32string out;
  out.reserve(cps.size());
  bool dropped_base = false;
  for (char32_t c : cps) {
    char32_t mapped = c;
    bool keep = true;
    if (unicode::is_space(c)) {
      mapped = U' ';
    } else if (c == U'\'' || c == U'"') {
      // already straight
    } else if (unicode::is_dash(c)) {
      mapped = U'-';
    } else if (unicode::is_single_quote(c)) {
      mapped = U'\'';
    } else if (unicode::is_double_quote(c)) {
      mapped = U'"';
    } else if (unicode::is_control(c)) {
      continue;
    } else if (c < 0x80) {
      // printable ASCII
    } else if (unicode::is_combining(c)) {
      // Marks follow the fate of the base they sit on.
      keep = !dropped_base;
      if (!keep) continue;
      out.push_back(c);
      continue;
    } else if (unicode::is_latin_script(c)) {
      // Latin letters, including ligatures and precomposed accents
    } else if (unicode::is_common_or_inherited_script(c) &&
               (unicode::is_punct(c) || unicode::is_digit(c))) {
      // shared punctuation and digits
    } else {
      keep = false;
    }
    dropped_base = !keep;
    if (keep) out.push_back(mapped);
  }

  std::u32string collapsed;
  collapsed.reserve(out.size());
  for (char32_t c : out) {
    if (c == U' ' && (collapsed.empty() || collapsed.back() == U' ')) continue;
    collapsed.push_back(c);
  }
  while (!collapsed.empty() && collapsed.back() == U' ') collapsed.pop_back();
  return unicode::nfc(unicode::encode(collapsed));
}

bool is_blank(std::string_view line) {
  for (char32_t c : unicode::decode(line)) {
    if (!unicode::is_space(c)) return false;
  }
  return true;
}

bool has_letter(std::string_view token) {
  for (char32_t c : unicode::decode(token)) {
    if (unicode::is_letter(c)) return true;
  }
  return false;
}

}  // namespace

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (true) {
    const auto nl = text.find('\n', start);
    std::string_view line = text.substr(
        start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.emplace_back(line);
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  return lines;
}

std::string clean_text(std::string_view raw) {
  const std::size_t bad = unicode::find_invalid(raw);
  if (bad != std::string_view::npos) {
    throw EncodingError("invalid UTF-8 at byte " + std::to_string(bad), bad);
  }
  std::string out;
  bool first = true;
  for (const auto& line : split_lines(raw)) {
    if (!first) out += '\n';
    first = false;
    out += clean_line(line);
  }
  return out;
}

std::vector<Stanza> split_stanzas(std::span<const std::string> poem_lines,
                                  std::string_view source) {
  std::vector<Stanza> stanzas;
  std::vector<std::string> current;
  auto flush = [&] {
    if (current.empty()) return;
    Stanza s;
    s.source = std::string(source);
    s.id = s.source + "#" + std::to_string(stanzas.size() + 1);
    s.lines = std::move(current);
    current.clear();
    stanzas.push_back(std::move(s));
  };
  for (const auto& line : poem_lines) {
    if (is_blank(line)) {
      flush();
    } else {
      current.push_back(line);
    }
  }
  flush();
  return stanzas;
}

StopwordList::StopwordList(std::unordered_set<std::string> words)
    : words_(std::move(words)) {}

StopwordList StopwordList::parse(std::istream& in) {
  std::unordered_set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    std::string w = phonetics::normalize_token(line);
    if (!w.empty()) words.insert(std::move(w));
  }
  return StopwordList(std::move(words));
}

StopwordList StopwordList::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open stopword list " + path.string());
  return parse(in);
}

std::vector<std::string> word_tokens(const Stanza& stanza) {
  std::vector<std::string> out;
  for (const auto& line : stanza.lines) {
    for (const auto& tok : lm::tokenize(line)) {
      std::string norm = phonetics::normalize_token(tok);
      if (!norm.empty() && has_letter(norm)) out.push_back(std::move(norm));
    }
  }
  return out;
}

CorpusStats CorpusStats::build(std::span<const Stanza> stanzas) {
  CorpusStats stats;
  stats.documents_ = stanzas.size();
  for (const auto& s : stanzas) {
    const auto words = word_tokens(s);
    const std::unordered_set<std::string> unique(words.begin(), words.end());
    for (const auto& w : unique) ++stats.df_[w];
  }
  return stats;
}

std::size_t CorpusStats::document_frequency(const std::string& token) const {
  const auto it = df_.find(token);
  return it == df_.end() ? 0 : it->second;
}

double CorpusStats::idf(const std::string& token) const {
  return std::log((1.0 + static_cast<double>(documents_)) /
                  (1.0 + static_cast<double>(document_frequency(token)))) +
         1.0;
}

KeywordSet::KeywordSet(std::vector<std::string> keywords)
    : keywords_(std::move(keywords)) {
  if (keywords_.empty() || keywords_.size() > kMaxKeywords) {
    throw Error("a keyword set holds 1 to 4 keywords, got " +
                std::to_string(keywords_.size()));
  }
  for (std::size_t i = 0; i < keywords_.size(); ++i) {
    const auto& k = keywords_[i];
    if (k.empty() || k.find_first_of(" \t\n") != std::string::npos) {
      throw Error("invalid keyword '" + k + "'");
    }
    if (unicode::to_lower(k) != k) {
      throw Error("keyword '" + k + "' is not lowercase");
    }
    if (std::find(keywords_.begin(), keywords_.begin() + static_cast<std::ptrdiff_t>(i),
                  k) != keywords_.begin() + static_cast<std::ptrdiff_t>(i)) {
      throw Error("duplicate keyword '" + k + "'");
    }
  }
}

std::string KeywordSet::joined() const {
  std::string out;
  for (const auto& k : keywords_) {
    if (!out.empty()) out += ' ';
    out += k;
  }
  return out;
}

KeywordSet extract_keywords(const Stanza& stanza, const CorpusStats& stats,
                            const StopwordList& stopwords, std::size_t max_k) {
  struct Candidate {
    std::string word;
    std::size_t first_pos;
    std::size_t tf;
    double score = 0.0;
  };
  std::vector<Candidate> cands;
  std::unordered_map<std::string, std::size_t> index;
  const auto words = word_tokens(stanza);
  for (std::size_t pos = 0; pos < words.size(); ++pos) {
    const auto& w = words[pos];
    if (unicode::length(w) < 3 || stopwords.contains(w)) continue;
    const auto [it, inserted] = index.try_emplace(w, cands.size());
    if (inserted) {
      cands.push_back({w, pos, 1});
    } else {
      ++cands[it->second].tf;
    }
  }
  if (cands.empty() || max_k == 0) throw NoKeywordsError(stanza.id);

  for (auto& c : cands) c.score = static_cast<double>(c.tf) * stats.idf(c.word);
  std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.first_pos != b.first_pos) return a.first_pos < b.first_pos;
    return a.word < b.word;
  });
  std::vector<std::string> picked;
  for (std::size_t i = 0; i < cands.size() && i < std::min(max_k, KeywordSet::kMaxKeywords); ++i) {
    picked.push_back(cands[i].word);
  }
  return KeywordSet(std::move(picked));
}

std::vector<TrainingPair> build_pairs(const Stanza& stanza,
                                      const KeywordSet& keywords) {
  std::vector<TrainingPair> pairs;
  if (stanza.lines.empty()) return pairs;
  pairs.push_back({keywords.joined(), stanza.lines.front()});
  auto rest = build_verse_pairs(stanza);
  pairs.insert(pairs.end(), std::make_move_iterator(rest.begin()),
               std::make_move_iterator(rest.end()));
  return pairs;
}

std::vector<TrainingPair> build_verse_pairs(const Stanza& stanza) {
  std::vector<TrainingPair> pairs;
  for (std::size_t i = 1; i < stanza.lines.size(); ++i) {
    pairs.push_back({stanza.lines[i - 1], stanza.lines[i]});
  }
  return pairs;
}

Split split_train_val(std::vector<Stanza> stanzas, double ratio,
                      std::uint64_t seed) {
  if (!(ratio > 0.0 && ratio < 1.0)) {
    throw Error("split ratio must lie strictly between 0 and 1");
  }
  Rng rng(seed);
  for (std::size_t i = stanzas.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(uniform_index(rng, i));
    std::swap(stanzas[i - 1], stanzas[j]);
  }
  const auto n_train = static_cast<std::size_t>(
      std::floor(ratio * static_cast<double>(stanzas.size())));
  Split split;
  split.train.assign(std::make_move_iterator(stanzas.begin()),
                     std::make_move_iterator(stanzas.begin() + static_cast<std::ptrdiff_t>(n_train)));
  split.val.assign(std::make_move_iterator(stanzas.begin() + static_cast<std::ptrdiff_t>(n_train)),
                   std::make_move_iterator(stanzas.end()));
  return split;
}

void write_stanzas(std::ostream& out, std::span<const Stanza> stanzas) {
  for (const auto& s : stanzas) {
    out << json{{"id", s.id}, {"source", s.source}, {"lines", s.lines}}.dump()
        << '\n';
  }
}

std::vector<Stanza> read_stanzas(std::istream& in) {
  std::vector<Stanza> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      const json j = json::parse(line);
      Stanza s{j.at("id").get<std::string>(), j.at("source").get<std::string>(),
               j.at("lines").get<std::vector<std::string>>()};
      if (s.lines.empty()) throw Error("stanza without lines");
      out.push_back(std::move(s));
    } catch (const json::exception& e) {
      throw Error("corpus record " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

void write_keywords(std::ostream& out, std::span<const KeywordRecord> records) {
  for (const auto& r : records) {
    out << json{{"id", r.stanza_id}, {"keywords", r.keywords.keywords()}}.dump()
        << '\n';
  }
}

std::vector<KeywordRecord> read_keywords(std::istream& in) {
  std::vector<KeywordRecord> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      const json j = json::parse(line);
      out.push_back({j.at("id").get<std::string>(),
                     KeywordSet(j.at("keywords").get<std::vector<std::string>>())});
    } catch (const json::exception& e) {
      throw Error("keyword record " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

std::vector<KeywordSet> sample_unseen_keywords(std::span<const KeywordRecord> training,
                                               std::size_t size, std::size_t count,
                                               std::uint64_t seed) {
  if (size == 0 || size > KeywordSet::kMaxKeywords) {
    throw Error("keyword sets hold 1 to 4 keywords");
  }
  std::set<std::string> pool_set;
  std::set<std::vector<std::string>> seen;
  for (const auto& r : training) {
    pool_set.insert(r.keywords.keywords().begin(), r.keywords.keywords().end());
    auto key = r.keywords.keywords();
    std::sort(key.begin(), key.end());
    seen.insert(std::move(key));
  }
  const std::vector<std::string> pool(pool_set.begin(), pool_set.end());
  if (pool.size() < size) {
    throw Error("keyword pool has " + std::to_string(pool.size()) +
                " words, need at least " + std::to_string(size));
  }

  constexpr std::size_t kAttemptsPerSet = 10'000;
  Rng rng(seed);
  std::vector<KeywordSet> out;
  std::vector<std::size_t> idx(pool.size());
  while (out.size() < count) {
    bool found = false;
    for (std::size_t attempt = 0; attempt < kAttemptsPerSet && !found; ++attempt) {
      for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
      std::vector<std::string> pick;
      for (std::size_t i = 0; i < size; ++i) {
        const auto j = i + static_cast<std::size_t>(uniform_index(rng, idx.size() - i));
        std::swap(idx[i], idx[j]);
        pick.push_back(pool[idx[i]]);
      }
      auto key = pick;
      std::sort(key.begin(), key.end());
      if (seen.insert(std::move(key)).second) {
        out.emplace_back(std::move(pick));
        found = true;
      }
    }
    if (!found) throw Error("could not draw an unseen keyword combination");
  }
  return out;
}

}  // namespace rimes::corpus
