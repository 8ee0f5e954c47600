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

#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fixture.hpp"
#include "rimes/unicode.hpp"

using namespace rimes::corpus;
using V = std::vector<std::string>;

namespace {

Stanza stanza(const V& lines, const std::string& id = "t#1") {
  return Stanza{id, "t", lines};
}

StopwordList small_stopwords() {
  return StopwordList({"et", "le", "la", "de", "les", "des", "tu", "un", "une", "que",
                       "qui", "ses", "pour"});
}

std::vector<Stanza> numbered(std::size_t n) {
  std::vector<Stanza> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(stanza({"vers " + std::to_string(i)}, "s#" + std::to_string(i + 1)));
  }
  return out;
}

}  // namespace

TEST_CASE("clean_text examples") {
  CHECK(clean_text("l'—amour") == "l'-amour");
  CHECK(clean_text("αβγ chanson") == "chanson");
  CHECK(clean_text("Le vent se lève, il faut tenter de vivre.") ==
        "Le vent se lève, il faut tenter de vivre.");
}

TEST_CASE("clean_text unifies quotes, dashes and spaces") {
  CHECK(clean_text("l’âme") == "l'âme");
  CHECK(clean_text("«Oui»") == "\"Oui\"");
  CHECK(clean_text("“mot” ‘mot’") == "\"mot\" 'mot'");
  CHECK(clean_text("a – b ― c") == "a - b - c");
  CHECK(clean_text("a   b") == "a b");
  CHECK(clean_text("  trop   d'espaces\t ") == "trop d'espaces");
}

TEST_CASE("clean_text normalizes to NFC and keeps lines") {
  CHECK(clean_text("été") == "été");
  CHECK(clean_text("un\r\ndeux\n\ntrois\n") == "un\ndeux\n\ntrois\n");
  CHECK(clean_text("Πάντα ῥεῖ\nsuite") == "\nsuite");
  CHECK(clean_text("zéro​espace") == "zéroespace");
}

TEST_CASE("clean_text rejects invalid UTF-8 with the offset") {
  try {
    clean_text(std::string("ok\n\xE2\x80"));
    FAIL("expected EncodingError");
  } catch (const rimes::EncodingError& e) {
    CHECK(e.offset() == 3);
  }
}

TEST_CASE("clean_text is idempotent on fuzzed input") {
  const std::vector<std::string> pieces = {
      "a", "é", "é", " ", " ", " ", "—", "–", "-", "’", "«", "»", "\"",
      "α", "Ω", "\n", "\r\n", "\t", ",", ".", "œ", "Ç", "̃", "​", "1", "…"};
  std::mt19937 rng(99);
  std::uniform_int_distribution<std::size_t> pick(0, pieces.size() - 1);
  std::uniform_int_distribution<int> len(0, 30);
  for (int n = 0; n < 2000; ++n) {
    std::string s;
    for (int i = len(rng); i > 0; --i) s += pieces[pick(rng)];
    const auto once = clean_text(s);
    REQUIRE(clean_text(once) == once);
  }
}

TEST_CASE("fixture corpus cleans to Latin text") {
  for (const auto& s : rimes::testing::fixture_stanzas()) {
    for (const auto& line : s.lines) {
      for (char32_t c : rimes::unicode::decode(line)) {
        CHECK((c < 0x80 || rimes::unicode::is_latin_script(c) ||
               rimes::unicode::is_common_or_inherited_script(c)));
        CHECK(c != U'’');
        CHECK(c != 0xA0);
      }
    }
  }
}

TEST_CASE("split_stanzas") {
  SUBCASE("two stanzas") {
    const V lines = {"a", "b", "c", "d", "", "e", "f", "g", "h"};
    const auto s = split_stanzas(lines, "p");
    REQUIRE(s.size() == 2);
    CHECK(s[0].lines.size() == 4);
    CHECK(s[1].lines.size() == 4);
    CHECK(s[0].id == "p#1");
    CHECK(s[1].id == "p#2");
    CHECK(s[1].source == "p");
  }
  SUBCASE("no blank line") {
    CHECK(split_stanzas(V{"a", "b"}, "p").size() == 1);
  }
  SUBCASE("leading, trailing and repeated blanks") {
    const auto s = split_stanzas(V{"", " ", "a", "", "", "b", ""}, "p");
    REQUIRE(s.size() == 2);
    CHECK(s[0].lines == V{"a"});
    CHECK(s[1].lines == V{"b"});
  }
  SUBCASE("all blank") {
    CHECK(split_stanzas(V{"", ""}, "p").empty());
    CHECK(split_stanzas(V{}, "p").empty());
  }
}

TEST_CASE("split_stanzas after joining is a partition") {
  const auto& stanzas = rimes::testing::fixture_stanzas();
  V joined;
  for (const auto& s : stanzas) {
    if (!joined.empty()) joined.push_back("");
    joined.insert(joined.end(), s.lines.begin(), s.lines.end());
  }
  const auto again = split_stanzas(joined, "x");
  REQUIRE(again.size() == stanzas.size());
  for (std::size_t i = 0; i < again.size(); ++i) CHECK(again[i].lines == stanzas[i].lines);
}

TEST_CASE("stopword list") {
  std::istringstream in("# mots\nLe\nla\n\n");
  const auto sw = StopwordList::parse(in);
  CHECK(sw.contains("le"));
  CHECK(sw.contains("la"));
  CHECK_FALSE(sw.contains("dame"));
  const auto shipped = StopwordList::load(rimes::testing::data_dir() / "stopwords_fr.txt");
  CHECK(shipped.contains("et"));
  CHECK(shipped.contains("des"));
  CHECK_FALSE(shipped.contains("amour"));
}

TEST_CASE("keyword set validation") {
  CHECK_THROWS_AS(KeywordSet(V{}), rimes::Error);
  CHECK_THROWS_AS(KeywordSet(V{"a", "b", "c", "d", "e"}), rimes::Error);
  CHECK_THROWS_AS(KeywordSet(V{"a", "a"}), rimes::Error);
  CHECK_THROWS_AS(KeywordSet(V{"Dame"}), rimes::Error);
  CHECK_THROWS_AS(KeywordSet(V{"deux mots"}), rimes::Error);
  CHECK(KeywordSet(V{"amant", "dame"}).joined() == "amant dame");
}

TEST_CASE("extract_keywords picks the salient content words") {
  const auto s = stanza({"L'amant, l'amant galamment s'escrime",
                         "pour la dame, la dame et son escrime,",
                         "galamment, le soir."});
  std::vector<Stanza> docs = {s, stanza({"le soir tombe"}, "o#1"),
                              stanza({"un soir bleu"}, "o#2")};
  const auto stats = CorpusStats::build(docs);
  const auto kw = extract_keywords(s, stats, small_stopwords());
  CHECK(std::set<std::string>(kw.keywords().begin(), kw.keywords().end()) ==
        std::set<std::string>{"amant", "galamment", "escrime", "dame"});
  // Equal scores fall back to order of first appearance.
  CHECK(kw.keywords() == V{"amant", "galamment", "escrime", "dame"});
}

TEST_CASE("extract_keywords on the sonnet fixture") {
  const auto& all = rimes::testing::fixture_stanzas();
  const auto it = std::find_if(all.begin(), all.end(), [](const Stanza& s) {
    return s.source == "corpus/sonnet_paladin";
  });
  REQUIRE(it != all.end());
  const auto stats = CorpusStats::build(all);
  const auto sw = StopwordList::load(rimes::testing::data_dir() / "stopwords_fr.txt");
  const auto kw = extract_keywords(*it, stats, sw);
  CHECK(kw.size() == 4);
  for (const auto& k : kw.keywords()) {
    CHECK_FALSE(sw.contains(k));
    CHECK(rimes::unicode::length(k) >= 3);
  }
  CHECK(kw.keywords().front() == "laure");
}

TEST_CASE("extract_keywords edge cases") {
  const auto sw = small_stopwords();
  SUBCASE("only stopwords") {
    const auto s = stanza({"et le la de les des"});
    const std::vector<Stanza> docs = {s};
    CHECK_THROWS_AS(extract_keywords(s, CorpusStats::build(docs), sw), NoKeywordsError);
  }
  SUBCASE("two candidates") {
    const auto s = stanza({"la rose et le lys"});
    const std::vector<Stanza> docs = {s};
    const auto kw = extract_keywords(s, CorpusStats::build(docs), sw);
    CHECK(kw.size() == 2);
  }
  SUBCASE("short words are not candidates") {
    const auto s = stanza({"il va au bal"});
    const std::vector<Stanza> docs = {s};
    CHECK(extract_keywords(s, CorpusStats::build(docs), sw).keywords() == V{"bal"});
  }
}

TEST_CASE("extract_keywords invariants over the fixture corpus") {
  const auto& all = rimes::testing::fixture_stanzas();
  const auto stats = CorpusStats::build(all);
  const auto sw = StopwordList::load(rimes::testing::data_dir() / "stopwords_fr.txt");
  for (const auto& s : all) {
    const auto kw = extract_keywords(s, stats, sw);
    CHECK(kw == extract_keywords(s, stats, sw));
    CHECK(kw.size() <= 4);
    std::set<std::string> uniq(kw.keywords().begin(), kw.keywords().end());
    CHECK(uniq.size() == kw.size());
    for (const auto& k : kw.keywords()) CHECK_FALSE(sw.contains(k));
  }
}

TEST_CASE("idf smoothing") {
  const std::vector<Stanza> docs = {stanza({"rose"}, "a"), stanza({"rose lys"}, "b")};
  const auto stats = CorpusStats::build(docs);
  CHECK(stats.documents() == 2);
  CHECK(stats.document_frequency("rose") == 2);
  CHECK(stats.idf("rose") == doctest::Approx(std::log(3.0 / 3.0) + 1.0));
  CHECK(stats.idf("lys") == doctest::Approx(std::log(3.0 / 2.0) + 1.0));
  CHECK(stats.idf("absent") == doctest::Approx(std::log(3.0) + 1.0));
}

TEST_CASE("build_pairs follows the keyword-then-verse layout") {
  const V lines = {"Vainement, paladin des dames, tu t'escrimes",
                   "À crier que j'ai fait, ici, peu galamment.",
                   "Si de Laure Pétrarque avait été l'amant,",
                   "Qui sait ce qu'il eût dit de Laure dans ses Rimes ?"};
  const KeywordSet kw(V{"amant", "galamment", "escrime", "dame"});
  const auto pairs = build_pairs(stanza(lines), kw);
  REQUIRE(pairs.size() == 4);
  CHECK(pairs[0].input == "amant galamment escrime dame");
  CHECK(pairs[0].output == lines[0]);
  for (std::size_t i = 1; i < pairs.size(); ++i) {
    CHECK(pairs[i].input == pairs[i - 1].output);
    CHECK(pairs[i].output == lines[i]);
  }
  CHECK(build_pairs(stanza({"un"}), kw).size() == 1);
  CHECK(build_pairs(stanza({"un", "deux"}), kw).size() == 2);
  CHECK(build_verse_pairs(stanza(lines)).size() == 3);
  CHECK(build_verse_pairs(stanza({"un"})).empty());
}

TEST_CASE("split_train_val sizes") {
  for (auto [n, train] : {std::pair<std::size_t, std::size_t>{10, 8}, {25215, 20172},
                          {1, 0}, {5, 4}, {0, 0}}) {
    const auto split = split_train_val(numbered(n), 0.8, 3);
    CHECK(split.train.size() == train);
    CHECK(split.val.size() == n - train);
  }
  CHECK_THROWS_AS(split_train_val(numbered(3), 0.0, 1), rimes::Error);
  CHECK_THROWS_AS(split_train_val(numbered(3), 1.0, 1), rimes::Error);
}

TEST_CASE("split_train_val is a seed-stable partition") {
  const auto input = numbered(57);
  const auto a = split_train_val(input, 0.8, 11);
  const auto b = split_train_val(input, 0.8, 11);
  CHECK(a.train == b.train);
  CHECK(a.val == b.val);
  std::multiset<std::string> ids;
  for (const auto& s : a.train) ids.insert(s.id);
  for (const auto& s : a.val) ids.insert(s.id);
  std::multiset<std::string> want;
  for (const auto& s : input) want.insert(s.id);
  CHECK(ids == want);
  const auto c = split_train_val(input, 0.8, 12);
  CHECK(c.train != a.train);
}

TEST_CASE("stanza and keyword records round trip") {
  const auto& all = rimes::testing::fixture_stanzas();
  std::stringstream ss;
  write_stanzas(ss, all);
  CHECK(read_stanzas(ss) == all);

  const std::vector<KeywordRecord> recs = {{"a#1", KeywordSet(V{"rose", "lys"})},
                                           {"a#2", KeywordSet(V{"âme"})}};
  std::stringstream ks;
  write_keywords(ks, recs);
  const auto back = read_keywords(ks);
  REQUIRE(back.size() == 2);
  CHECK(back[0].stanza_id == "a#1");
  CHECK(back[1].keywords == recs[1].keywords);

  std::stringstream bad("{\"id\":\"x\",\"keywords\":[\"Rose\"]}\n");
  CHECK_THROWS_AS(read_keywords(bad), rimes::Error);
  std::stringstream broken("not json\n");
  CHECK_THROWS_AS(read_stanzas(broken), rimes::Error);
}

TEST_CASE("sample_unseen_keywords avoids training sets") {
  const std::vector<KeywordRecord> training = {
      {"a", KeywordSet(V{"rose", "lys", "aube", "nuit"})},
      {"b", KeywordSet(V{"mer", "vent", "ciel", "soir"})},
      {"c", KeywordSet(V{"rose", "mer"})}};
  const auto drawn = sample_unseen_keywords(training, 4, 30, 1);
  REQUIRE(drawn.size() == 30);
  std::set<std::vector<std::string>> seen;
  for (const auto& r : training) {
    auto k = r.keywords.keywords();
    std::sort(k.begin(), k.end());
    seen.insert(k);
  }
  for (const auto& d : drawn) {
    CHECK(d.size() == 4);
    auto k = d.keywords();
    std::sort(k.begin(), k.end());
    CHECK(seen.insert(k).second);
  }
  const auto again = sample_unseen_keywords(training, 4, 30, 1);
  CHECK(std::equal(drawn.begin(), drawn.end(), again.begin()));
  CHECK_THROWS_AS(sample_unseen_keywords(training, 5, 1, 1), rimes::Error);
  // C(8,4) = 70 combinations, two of them used by training.
  CHECK_NOTHROW(sample_unseen_keywords(training, 4, 68, 2));
  CHECK_THROWS_AS(sample_unseen_keywords(training, 4, 69, 2), rimes::Error);
}
