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

// rimes: command-line front end.
//
//   rimes clean    --in DIR --out CORPUS
//   rimes train    --corpus CORPUS --out MODEL [--order N] [--seed S]
//   rimes generate (--model MODEL | --bridge CMD) --lexicon LEX
//                  (--keywords a,b,c | --random-keywords N) [options]
//   rimes rhyme    --lexicon LEX WORD WORD
//   rimes annotate --lexicon LEX --in POEM
//
// Exit codes: 0 success, 1 no rhyme, 2 data problem, 64 usage, 70 internal.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "manifest.hpp"
#include "rimes/bridge.hpp"
#include "rimes/corpus.hpp"
#include "rimes/generator.hpp"
#include "rimes/ngram.hpp"
#include "rimes/phonetics.hpp"
#include "rimes/tokenizer.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNoRhyme = 1;
constexpr int kExitData = 2;
constexpr int kExitUsage = 64;
constexpr int kExitInternal = 70;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw rimes::Error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw rimes::Error("cannot write " + path.string());
  return out;
}

fs::path keyword_sidecar(const fs::path& model) {
  return fs::path(model.string() + ".keywords.jsonl");
}

std::string default_data(const char* name) {
  return (fs::path(RIMES_DATA_DIR) / name).string();
}

// --- clean -----------------------------------------------------------------

struct CleanOptions {
  std::string in;
  std::string out;
};

int cmd_clean(const CleanOptions& opt) {
  const fs::path dir(opt.in);
  if (!fs::is_directory(dir)) throw rimes::Error(opt.in + " is not a directory");
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".txt") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw rimes::Error("no .txt files in " + opt.in);

  const std::string collection = fs::weakly_canonical(dir).filename().string();
  std::vector<rimes::corpus::Stanza> stanzas;
  std::size_t poems = 0;
  std::size_t failed = 0;
  for (const auto& f : files) {
    try {
      const std::string cleaned = rimes::corpus::clean_text(read_file(f));
      const auto lines = rimes::corpus::split_lines(cleaned);
      auto found = rimes::corpus::split_stanzas(lines, collection + "/" + f.stem().string());
      if (!found.empty()) ++poems;
      stanzas.insert(stanzas.end(), std::make_move_iterator(found.begin()),
                     std::make_move_iterator(found.end()));
    } catch (const rimes::Error& e) {
      ++failed;
      std::cerr << "warning: skipping " << f.string() << ": " << e.what() << '\n';
    }
  }
  if (failed == files.size()) throw rimes::Error("no input file could be read");

  auto out = open_out(opt.out);
  rimes::corpus::write_stanzas(out, stanzas);
  std::cout << "files: " << files.size() << '\n'
            << "poems: " << poems << '\n'
            << "stanzas: " << stanzas.size() << '\n';
  return kExitOk;
}

// --- train -----------------------------------------------------------------

struct TrainOptions {
  std::string corpus;
  std::string out;
  std::string stopwords = default_data("stopwords_fr.txt");
  int order = rimes::lm::NgramModel::kDefaultOrder;
  std::uint64_t seed = 7;
};

struct PairSet {
  std::vector<rimes::corpus::TrainingPair> pairs;
  std::vector<rimes::corpus::KeywordRecord> keywords;
};

PairSet make_pairs(const std::vector<rimes::corpus::Stanza>& stanzas,
                   const rimes::corpus::CorpusStats& stats,
                   const rimes::corpus::StopwordList& stopwords) {
  PairSet set;
  for (const auto& s : stanzas) {
    try {
      auto kw = rimes::corpus::extract_keywords(s, stats, stopwords);
      auto pairs = rimes::corpus::build_pairs(s, kw);
      set.pairs.insert(set.pairs.end(), pairs.begin(), pairs.end());
      set.keywords.push_back({s.id, std::move(kw)});
    } catch (const rimes::corpus::NoKeywordsError&) {
      auto pairs = rimes::corpus::build_verse_pairs(s);
      set.pairs.insert(set.pairs.end(), pairs.begin(), pairs.end());
    }
  }
  return set;
}

int cmd_train(const TrainOptions& opt) {
  std::ifstream in(opt.corpus, std::ios::binary);
  if (!in) throw rimes::Error("cannot read " + opt.corpus);
  auto stanzas = rimes::corpus::read_stanzas(in);
  if (stanzas.empty()) throw rimes::Error("corpus " + opt.corpus + " is empty");
  const std::size_t total = stanzas.size();

  const auto stopwords = rimes::corpus::StopwordList::load(opt.stopwords);
  auto split = rimes::corpus::split_train_val(std::move(stanzas), 0.8, opt.seed);
  const auto stats = rimes::corpus::CorpusStats::build(split.train);
  const PairSet train = make_pairs(split.train, stats, stopwords);
  const PairSet val = make_pairs(split.val, stats, stopwords);
  if (train.pairs.empty()) throw rimes::Error("training split yields no pairs");

  const auto model = rimes::lm::NgramModel::train(train.pairs, opt.order);
  {
    auto out = open_out(opt.out);
    model.save(out);
  }
  {
    auto out = open_out(keyword_sidecar(opt.out));
    rimes::corpus::write_keywords(out, train.keywords);
  }

  std::cout << "stanzas: " << total << '\n'
            << "split: " << split.train.size() << " train / " << split.val.size()
            << " validation\n"
            << "pairs: " << train.pairs.size() << " train / " << val.pairs.size()
            << " validation\n"
            << "order: " << model.order() << '\n'
            << "vocabulary: " << model.vocabulary().size() << '\n';
  if (val.pairs.empty()) {
    std::cout << "perplexity: n/a (empty validation split)\n";
  } else {
    const auto ppl = model.perplexity(val.pairs);
    std::cout << "perplexity: " << std::fixed << std::setprecision(4) << ppl.value
              << " (" << ppl.scored_tokens << " tokens, " << ppl.oov_tokens
              << " out of vocabulary)\n";
  }
  std::cout << "keywords: " << train.keywords.size() << " sets -> "
            << keyword_sidecar(opt.out).string() << '\n';
  return kExitOk;
}

// --- generate --------------------------------------------------------------

struct GenerateOptions {
  std::string model;
  std::string bridge;
  std::string lexicon;
  std::string vowels = default_data("vowels_fr.txt");
  std::string keywords;
  std::size_t random_keywords = 0;
  std::string keyword_pool;
  std::size_t count = 1;
  std::string trace;
  std::string out;
  rimes::generator::GenerationConfig config;
};

rimes::corpus::KeywordSet parse_keyword_flag(const std::string& flag) {
  std::vector<std::string> words;
  std::stringstream ss(flag);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::string w = rimes::phonetics::normalize_token(item);
    if (w.empty()) throw UsageError("empty keyword in --keywords");
    words.push_back(std::move(w));
  }
  if (words.empty()) throw UsageError("--keywords needs at least one keyword");
  if (words.size() > rimes::corpus::KeywordSet::kMaxKeywords) {
    throw UsageError("--keywords accepts at most 4 keywords, got " +
                     std::to_string(words.size()));
  }
  try {
    return rimes::corpus::KeywordSet(std::move(words));
  } catch (const rimes::Error& e) {
    throw UsageError(std::string("--keywords: ") + e.what());
  }
}

json file_entry(const std::string& path) {
  return json{{"path", path}, {"sha256", rimes::tools::sha256_file(path)}};
}

int cmd_generate(const GenerateOptions& opt) {
  if (opt.model.empty() == opt.bridge.empty()) {
    throw UsageError("exactly one of --model or --bridge is required");
  }
  if (opt.keywords.empty() == (opt.random_keywords == 0)) {
    throw UsageError("exactly one of --keywords or --random-keywords is required");
  }
  if (opt.count == 0) throw UsageError("--count must be at least 1");
  try {
    opt.config.validate();
  } catch (const rimes::Error& e) {
    throw UsageError(e.what());
  }

  const auto lexicon = rimes::phonetics::load_lexicon(fs::path(opt.lexicon));
  const auto vowels = rimes::phonetics::VowelSet::load(opt.vowels);
  const rimes::generator::RhymeScorer scorer(lexicon, vowels);

  json manifest;
  manifest["tool"] = "rimes";
  manifest["version"] = RIMES_VERSION;
  manifest["started_at"] = rimes::tools::utc_timestamp();
  manifest["lexicon"] = file_entry(opt.lexicon);
  manifest["vowels"] = file_entry(opt.vowels);

  std::unique_ptr<rimes::lm::LanguageModel> backend;
  if (!opt.model.empty()) {
    std::ifstream in(opt.model, std::ios::binary);
    if (!in) throw rimes::Error("cannot read model " + opt.model);
    backend = std::make_unique<rimes::lm::NgramModel>(rimes::lm::NgramModel::load(in));
    manifest["backend"] = {{"kind", "ngram"}, {"model", file_entry(opt.model)}};
  } else {
    auto client = rimes::lm::BridgeClient::connect(opt.bridge);
    manifest["backend"] = {{"kind", "bridge"},
                           {"command", opt.bridge},
                           {"name", client->name()},
                           {"version", client->version()},
                           {"eos_token", client->eos_token()}};
    backend = std::move(client);
  }

  std::vector<rimes::corpus::KeywordSet> keyword_sets;
  if (!opt.keywords.empty()) {
    keyword_sets.assign(opt.count, parse_keyword_flag(opt.keywords));
  } else {
    std::string pool = opt.keyword_pool;
    if (pool.empty()) {
      if (opt.model.empty()) throw UsageError("--random-keywords with --bridge needs --keyword-pool");
      pool = keyword_sidecar(opt.model).string();
    }
    std::ifstream in(pool, std::ios::binary);
    if (!in) throw rimes::Error("cannot read keyword pool " + pool);
    const auto records = rimes::corpus::read_keywords(in);
    keyword_sets = rimes::corpus::sample_unseen_keywords(records, opt.random_keywords,
                                                         opt.count, opt.config.seed);
    manifest["keyword_pool"] = file_entry(pool);
  }

  const auto& c = opt.config;
  manifest["config"] = {{"k", c.k},
                        {"min_tokens", c.min_tokens},
                        {"max_tokens", c.max_tokens},
                        {"length_penalty", c.length_penalty},
                        {"rhyme_weight", c.rhyme_weight},
                        {"verses", c.n_verses},
                        {"seed", c.seed},
                        {"count", opt.count},
                        {"random_keywords", opt.random_keywords}};

  std::ofstream trace;
  if (!opt.trace.empty()) trace = open_out(opt.trace);
  std::ofstream poem_file;
  if (!opt.out.empty()) poem_file = open_out(opt.out);
  std::ostream& out = opt.out.empty() ? std::cout : poem_file;

  json poems = json::array();
  for (std::size_t i = 0; i < keyword_sets.size(); ++i) {
    const auto poem = rimes::generator::generate_poem(keyword_sets[i], *backend, scorer, c);
    if (i > 0) out << '\n';
    out << "# poem " << (i + 1) << ": " << poem.keywords.joined() << '\n';
    for (const auto& line : poem.lines()) out << line << '\n';
    if (trace.is_open()) rimes::generator::write_trace(trace, poem, i, c.rhyme_weight);

    json verses = json::array();
    for (const auto& v : poem.verses) {
      verses.push_back({{"tokens", v.tokens.size()},
                        {"rhymes", v.rhyme_count},
                        {"ended_by_eos", v.ended_by_eos}});
    }
    poems.push_back({{"keywords", poem.keywords.keywords()}, {"verses", verses}});
  }
  out.flush();

  manifest["poems"] = poems;
  if (!opt.trace.empty()) manifest["trace"] = opt.trace;
  manifest["finished_at"] = rimes::tools::utc_timestamp();
  if (!opt.out.empty()) {
    auto mf = open_out(opt.out + ".manifest.json");
    mf << manifest.dump(2) << '\n';
  } else {
    std::cerr << "manifest: " << manifest.dump() << '\n';
  }
  return kExitOk;
}

// --- rhyme / annotate ------------------------------------------------------

struct RhymeOptions {
  std::string lexicon;
  std::string vowels = default_data("vowels_fr.txt");
  std::vector<std::string> words;
  std::string in;
};

const char* yes_no(bool b) { return b ? "yes" : "no"; }

int cmd_rhyme(const RhymeOptions& opt) {
  if (opt.words.size() != 2) throw UsageError("rhyme takes exactly two words");
  const auto lexicon = rimes::phonetics::load_lexicon(fs::path(opt.lexicon));
  const auto vowels = rimes::phonetics::VowelSet::load(opt.vowels);

  const auto* a = lexicon.find(opt.words[0]);
  const auto* b = lexicon.find(opt.words[1]);
  std::cout << opt.words[0] << ": " << (a ? "/" + a->str() + "/" : "unknown") << '\n'
            << opt.words[1] << ": " << (b ? "/" + b->str() + "/" : "unknown") << '\n';
  if (!a || !b) return kExitData;

  const auto [ea, eb] = rimes::phonetics::equalize(*a, *b);
  const bool same_word = rimes::phonetics::normalize_token(opt.words[0]) ==
                         rimes::phonetics::normalize_token(opt.words[1]);
  const auto rel = same_word ? rimes::phonetics::RhymeRelation{}
                             : rimes::phonetics::classify(*a, *b, vowels);
  std::cout << "equalized: /" << ea.str() << "/ /" << eb.str() << "/\n"
            << "full: " << yes_no(rel.full) << '\n'
            << "assonance: " << yes_no(rel.assonance) << '\n'
            << "consonance: " << yes_no(rel.consonance) << '\n';
  return rel.any() ? kExitOk : kExitNoRhyme;
}

std::optional<std::string> final_word(const std::string& line) {
  const auto tokens = rimes::lm::tokenize(line);
  for (auto it = tokens.rbegin(); it != tokens.rend(); ++it) {
    const std::string norm = rimes::phonetics::normalize_token(*it);
    if (!norm.empty() && !rimes::lm::is_punctuation_token(norm)) return norm;
  }
  return std::nullopt;
}

int cmd_annotate(const RhymeOptions& opt) {
  const auto lexicon = rimes::phonetics::load_lexicon(fs::path(opt.lexicon));
  const auto vowels = rimes::phonetics::VowelSet::load(opt.vowels);
  const std::string text = rimes::corpus::clean_text(read_file(opt.in));

  std::vector<std::string> lines;
  for (auto& l : rimes::corpus::split_lines(text)) {
    if (!l.empty()) lines.push_back(std::move(l));
  }
  if (lines.empty()) throw rimes::Error(opt.in + " contains no verses");

  std::vector<std::optional<std::string>> finals;
  for (const auto& l : lines) finals.push_back(final_word(l));

  std::cout << "line_a\tline_b\tword_a\tword_b\tfull\tassonance\tconsonance\tany\n";
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      const std::string wa = finals[i].value_or("-");
      const std::string wb = finals[j].value_or("-");
      std::cout << (i + 1) << '\t' << (j + 1) << '\t' << wa << '\t' << wb << '\t';
      const auto* a = finals[i] ? lexicon.find(*finals[i]) : nullptr;
      const auto* b = finals[j] ? lexicon.find(*finals[j]) : nullptr;
      if (!a || !b) {
        std::cout << "unknown\tunknown\tunknown\tunknown\n";
        continue;
      }
      const auto rel = wa == wb ? rimes::phonetics::RhymeRelation{}
                                : rimes::phonetics::classify(*a, *b, vowels);
      std::cout << yes_no(rel.full) << '\t' << yes_no(rel.assonance) << '\t'
                << yes_no(rel.consonance) << '\t' << yes_no(rel.any()) << '\n';
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rhyme-aware French verse generation toolkit"};
  app.set_version_flag("--version", std::string(RIMES_VERSION));
  app.require_subcommand(1);

  CleanOptions clean;
  auto* sc_clean = app.add_subcommand("clean", "Clean raw poems and split them into stanzas");
  sc_clean->add_option("--in", clean.in, "Directory of UTF-8 .txt poems")->required();
  sc_clean->add_option("--out", clean.out, "Output corpus (JSON lines)")->required();

  TrainOptions train;
  auto* sc_train = app.add_subcommand("train", "Train the n-gram model on a cleaned corpus");
  sc_train->add_option("--corpus", train.corpus, "Corpus file from `clean`")->required();
  sc_train->add_option("--out", train.out, "Model file to write")->required();
  sc_train->add_option("--order", train.order, "N-gram order")->capture_default_str();
  sc_train->add_option("--seed", train.seed, "Train/validation split seed")->capture_default_str();
  sc_train->add_option("--stopwords", train.stopwords, "Stopword list")->capture_default_str();

  GenerateOptions gen;
  auto* sc_gen = app.add_subcommand("generate", "Generate poems");
  sc_gen->add_option("--model", gen.model, "N-gram model file");
  sc_gen->add_option("--bridge", gen.bridge, "Command starting a bridge process");
  sc_gen->add_option("--lexicon", gen.lexicon, "Pronunciation lexicon (TSV)")->required();
  sc_gen->add_option("--vowels", gen.vowels, "Vowel inventory")->capture_default_str();
  sc_gen->add_option("--keywords", gen.keywords, "Comma-separated keywords (max 4)");
  sc_gen->add_option("--random-keywords", gen.random_keywords,
                     "Sample this many unseen keywords per poem");
  sc_gen->add_option("--keyword-pool", gen.keyword_pool,
                     "Training keyword file (default: <model>.keywords.jsonl)");
  sc_gen->add_option("--verses", gen.config.n_verses, "Verses per poem")->capture_default_str();
  sc_gen->add_option("--count", gen.count, "Number of poems")->capture_default_str();
  sc_gen->add_option("--k", gen.config.k, "Candidates per step")->capture_default_str();
  sc_gen->add_option("--min-tokens", gen.config.min_tokens)->capture_default_str();
  sc_gen->add_option("--max-tokens", gen.config.max_tokens)->capture_default_str();
  sc_gen->add_option("--rhyme-weight", gen.config.rhyme_weight)->capture_default_str();
  sc_gen->add_option("--length-penalty", gen.config.length_penalty)->capture_default_str();
  sc_gen->add_option("--seed", gen.config.seed, "Keyword sampling seed")->capture_default_str();
  sc_gen->add_option("--trace", gen.trace, "Write per-step decoding records here");
  sc_gen->add_option("--out", gen.out, "Write poems here instead of stdout");

  RhymeOptions rhyme;
  auto* sc_rhyme = app.add_subcommand("rhyme", "Classify the rhyme between two words");
  sc_rhyme->add_option("--lexicon", rhyme.lexicon)->required();
  sc_rhyme->add_option("--vowels", rhyme.vowels)->capture_default_str();
  sc_rhyme->add_option("words", rhyme.words, "Two words")->expected(2)->required();

  RhymeOptions annotate;
  auto* sc_annot = app.add_subcommand("annotate", "Rhyme table over the final words of a poem");
  sc_annot->add_option("--lexicon", annotate.lexicon)->required();
  sc_annot->add_option("--vowels", annotate.vowels)->capture_default_str();
  sc_annot->add_option("--in", annotate.in, "Poem text file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*sc_clean) return cmd_clean(clean);
    if (*sc_train) return cmd_train(train);
    if (*sc_gen) return cmd_generate(gen);
    if (*sc_rhyme) return cmd_rhyme(rhyme);
    if (*sc_annot) return cmd_annotate(annotate);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const rimes::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInternal;
}
