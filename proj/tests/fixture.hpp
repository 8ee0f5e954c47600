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

#ifndef RIMES_TESTS_FIXTURE_HPP_
#define RIMES_TESTS_FIXTURE_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include "rimes/corpus.hpp"
#include "rimes/ngram.hpp"
#include "rimes/phonetics.hpp"

namespace rimes::testing {

std::filesystem::path data_dir();

// The bundled poems, cleaned and split the way `rimes clean` does it.
const std::vector<corpus::Stanza>& fixture_stanzas();

// The `rimes train` pipeline on the fixture corpus (seed 7, order 3).
struct FixturePipeline {
  corpus::Split split;
  corpus::StopwordList stopwords;
  std::vector<corpus::TrainingPair> train_pairs;
  std::vector<corpus::KeywordRecord> keywords;
  lm::NgramModel model;
};
const FixturePipeline& fixture_pipeline();

const phonetics::Lexicon& fixture_lexicon();
const phonetics::VowelSet& fixture_vowels();

class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

struct CommandResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

// Runs through /bin/sh; stdout and stderr captured separately.
CommandResult run_command(const std::string& command);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& content);

// Single-quotes for the shell.
std::string shell_quote(const std::string& s);

}  // namespace rimes::testing

#endif  // RIMES_TESTS_FIXTURE_HPP_
