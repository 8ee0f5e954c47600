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

#include "fixture.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include <sys/wait.h>

namespace rimes::testing {

namespace fs = std::filesystem;

fs::path data_dir() { return fs::path(RIMES_DATA_DIR); }

const std::vector<corpus::Stanza>& fixture_stanzas() {
  static const std::vector<corpus::Stanza> stanzas = [] {
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(data_dir() / "corpus")) {
      if (e.path().extension() == ".txt") files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    std::vector<corpus::Stanza> out;
    for (const auto& f : files) {
      const auto lines = corpus::split_lines(corpus::clean_text(read_file(f)));
      auto found = corpus::split_stanzas(lines, "corpus/" + f.stem().string());
      out.insert(out.end(), found.begin(), found.end());
    }
    return out;
  }();
  return stanzas;
}

const FixturePipeline& fixture_pipeline() {
  static const FixturePipeline pipeline = [] {
    auto split = corpus::split_train_val(fixture_stanzas(), 0.8, 7);
    auto stopwords = corpus::StopwordList::load(data_dir() / "stopwords_fr.txt");
    const auto stats = corpus::CorpusStats::build(split.train);
    std::vector<corpus::TrainingPair> pairs;
    std::vector<corpus::KeywordRecord> keywords;
    for (const auto& s : split.train) {
      try {
        auto kw = corpus::extract_keywords(s, stats, stopwords);
        auto p = corpus::build_pairs(s, kw);
        pairs.insert(pairs.end(), p.begin(), p.end());
        keywords.push_back({s.id, std::move(kw)});
      } catch (const corpus::NoKeywordsError&) {
        auto p = corpus::build_verse_pairs(s);
        pairs.insert(pairs.end(), p.begin(), p.end());
      }
    }
    auto model = lm::NgramModel::train(pairs, 3);
    return FixturePipeline{std::move(split), std::move(stopwords), std::move(pairs),
                           std::move(keywords), std::move(model)};
  }();
  return pipeline;
}

const phonetics::Lexicon& fixture_lexicon() {
  static const phonetics::Lexicon lex =
      phonetics::load_lexicon(data_dir() / "lexicon_fr.tsv");
  return lex;
}

const phonetics::VowelSet& fixture_vowels() {
  static const phonetics::VowelSet v =
      phonetics::VowelSet::load(data_dir() / "vowels_fr.txt");
  return v;
}

TempDir::TempDir() {
  std::random_device rd;
  for (int attempt = 0; attempt < 100; ++attempt) {
    const auto candidate =
        fs::temp_directory_path() / ("rimes-test-" + std::to_string(rd()));
    if (fs::create_directory(candidate)) {
      path_ = candidate;
      return;
    }
  }
  throw std::runtime_error("cannot create a temporary directory");
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out += c;
    }
  }
  return out + "'";
}

CommandResult run_command(const std::string& command) {
  TempDir tmp;
  const fs::path err_path = tmp / "stderr";
  const std::string full = command + " 2>" + shell_quote(err_path.string());
  FILE* pipe = popen(full.c_str(), "r");
  if (pipe == nullptr) throw std::runtime_error("popen failed");
  CommandResult result;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) result.out.append(buf, n);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  if (fs::exists(err_path)) result.err = read_file(err_path);
  return result;
}

}  // namespace rimes::testing
