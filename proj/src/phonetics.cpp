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

#include "rimes/phonetics.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <optional>

namespace rimes::phonetics {
namespace {

std::optional<std::size_t> first_vowel(const IpaString& s, const VowelSet& v) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (v.is_vowel(s, i)) return i;
  }
  return std::nullopt;
}

std::string_view trim(std::string_view s) {
  constexpr std::string_view ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

}  // namespace

IpaString::IpaString(std::vector<std::string> segments)
    : segments_(std::move(segments)) {
  bases_.reserve(segments_.size());
  for (const auto& seg : segments_) bases_.push_back(unicode::base_char(seg));
}

IpaString IpaString::drop_front(std::size_t n) const {
  IpaString out;
  n = std::min(n, segments_.size());
  out.segments_.assign(segments_.begin() + static_cast<std::ptrdiff_t>(n),
                       segments_.end());
  out.bases_.assign(bases_.begin() + static_cast<std::ptrdiff_t>(n),
                    bases_.end());
  return out;
}

std::string IpaString::str() const {
  std::string out;
  for (const auto& s : segments_) out += s;
  return out;
}

IpaString parse_ipa(std::string_view raw) {
  return IpaString(unicode::graphemes(raw));
}

VowelSet::VowelSet(std::set<char32_t> vowels) : vowels_(std::move(vowels)) {
  if (vowels_.empty()) throw Error("vowel set must not be empty");
}

VowelSet VowelSet::parse(std::istream& in) {
  std::set<char32_t> vowels;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto clusters = unicode::graphemes(line);
    if (clusters.size() != 1) {
      throw Error("vowel file line " + std::to_string(line_no) +
                  ": expected a single IPA character, got '" +
                  std::string(line) + "'");
    }
    vowels.insert(unicode::base_char(clusters.front()));
  }
  return VowelSet(std::move(vowels));
}

VowelSet VowelSet::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open vowel file " + path.string());
  return parse(in);
}

std::pair<IpaString, IpaString> equalize(const IpaString& a,
                                         const IpaString& b) {
  if (a.size() > b.size()) return {a.drop_front(a.size() - b.size()), b};
  if (b.size() > a.size()) return {a, b.drop_front(b.size() - a.size())};
  return {a, b};
}

RhymeRelation classify(const IpaString& a, const IpaString& b,
                       const VowelSet& vowels) {
  const auto [x, y] = equalize(a, b);
  RhymeRelation rel;
  if (x == y) return rel;

  const std::size_t n = x.size();
  const auto vx = first_vowel(x, vowels);
  const auto vy = first_vowel(y, vowels);
  if (vx && vy) {
    const std::size_t from = std::min(*vx, *vy);
    rel.full = std::equal(x.segments().begin() + static_cast<std::ptrdiff_t>(from),
                          x.segments().end(),
                          y.segments().begin() + static_cast<std::ptrdiff_t>(from));
  }

  bool vowel_seen = false;
  bool consonant_seen = false;
  bool vowels_match = true;      // consonants masked
  bool consonants_match = true;  // vowels masked
  for (std::size_t i = 0; i < n; ++i) {
    const bool xv = vowels.is_vowel(x, i);
    const bool yv = vowels.is_vowel(y, i);
    vowel_seen |= xv || yv;
    consonant_seen |= !xv || !yv;
    if (xv != yv) {
      vowels_match = consonants_match = false;
      break;
    }
    if (x[i] != y[i]) (xv ? vowels_match : consonants_match) = false;
  }
  rel.assonance = vowels_match && vowel_seen;
  rel.consonance = consonants_match && consonant_seen;
  return rel;
}

std::string normalize_token(std::string_view token) {
  const std::u32string cps =
      unicode::decode(unicode::nfc(unicode::to_lower(unicode::nfc(token))));
  std::size_t b = 0;
  std::size_t e = cps.size();
  auto strip = [](char32_t c) {
    return unicode::is_punct(c) || unicode::is_space(c);
  };
  while (b < e && strip(cps[b])) ++b;
  while (e > b && strip(cps[e - 1])) --e;
  return unicode::encode(std::u32string_view(cps).substr(b, e - b));
}

void Lexicon::insert(std::string_view token, IpaString pronunciation) {
  entries_.insert_or_assign(normalize_token(token), std::move(pronunciation));
}

const IpaString* Lexicon::find(std::string_view token) const {
  const auto it = entries_.find(normalize_token(token));
  return it == entries_.end() ? nullptr : &it->second;
}

Lexicon load_lexicon(std::istream& in) {
  Lexicon lex;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (raw.empty() || raw.front() == '#') continue;
    auto fail = [&](const std::string& why) {
      throw LexiconError("lexicon line " + std::to_string(line_no) + ": " + why,
                         line_no);
    };
    if (unicode::find_invalid(raw) != std::string::npos) fail("invalid UTF-8");
    const auto tab = raw.find('\t');
    if (tab == std::string::npos || raw.find('\t', tab + 1) != std::string::npos) {
      fail("expected exactly two tab-separated fields");
    }
    const std::string_view token = trim(std::string_view(raw).substr(0, tab));
    const std::string_view ipa = trim(std::string_view(raw).substr(tab + 1));
    if (normalize_token(token).empty()) fail("empty token");
    if (ipa.empty()) fail("empty pronunciation");
    if (ipa.find_first_of(" \t") != std::string_view::npos) {
      fail("whitespace inside pronunciation");
    }
    lex.insert(token, parse_ipa(ipa));
  }
  return lex;
}

Lexicon load_lexicon(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open lexicon " + path.string());
  return load_lexicon(in);
}

bool rhymes_any(std::string_view token_a, std::string_view token_b,
                const Lexicon& lex, const VowelSet& vowels) {
  if (normalize_token(token_a) == normalize_token(token_b)) return false;
  const IpaString* a = lex.find(token_a);
  const IpaString* b = lex.find(token_b);
  if (a == nullptr || b == nullptr) return false;
  return classify(*a, *b, vowels).any();
}

}  // namespace rimes::phonetics
