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

#ifndef RIMES_GENERATOR_HPP_
#define RIMES_GENERATOR_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rimes/backend.hpp"
#include "rimes/corpus.hpp"
#include "rimes/phonetics.hpp"

namespace rimes::generator {

struct GenerationConfig {
  std::size_t k = 10;
  std::size_t min_tokens = 4;
  std::size_t max_tokens = 20;
  // Stored for the run manifest only. Greedy decoding never compares
  // finished hypotheses, which is the only place a length penalty acts.
  double length_penalty = 1.0;
  double rhyme_weight = 0.5;
  std::size_t n_verses = 4;
  std::uint64_t seed = 0;

  // Throws Error on k == 0, min_tokens == 0, min > max, negative weight.
  void validate() const;
};

// Per-verse decoding state. `reference_tokens` holds normalized forms of the
// input tokens plus every token emitted so far in this verse.
struct GenerationState {
  std::set<std::string> reference_tokens;
  std::vector<std::string> generated;
  std::size_t cumulative_rhyme_count = 0;

  static GenerationState from_input(std::span<const std::string> input_tokens);

  // Records an emitted token and whether it rhymed when scored.
  void accept(const std::string& token, bool rhymed);
};

class RhymeScorer {
 public:
  RhymeScorer(const phonetics::Lexicon& lexicon, const phonetics::VowelSet& vowels)
      : lexicon_(lexicon), vowels_(vowels) {}

  // 1 if the candidate rhymes with some reference token, else 0.
  int indicator(std::string_view candidate, const GenerationState& state) const;

  const phonetics::Lexicon& lexicon() const noexcept { return lexicon_; }
  const phonetics::VowelSet& vowels() const noexcept { return vowels_; }

 private:
  const phonetics::Lexicon& lexicon_;
  const phonetics::VowelSet& vowels_;
};

struct ScoredCandidate {
  lm::TokenCandidate candidate;
  int indicator = 0;
  double score = 0.0;  // logprob + rhyme_weight * indicator
};

// Sorts by score desc, then logprob desc, then token asc.
std::vector<ScoredCandidate> rerank(std::span<const lm::TokenCandidate> candidates,
                                    std::span<const int> indicators,
                                    double rhyme_weight);
std::vector<ScoredCandidate> rerank(std::span<const lm::TokenCandidate> candidates,
                                    const GenerationState& state,
                                    const RhymeScorer& scorer, double rhyme_weight);

// True when `a` ranks strictly before `b` under the rerank order.
bool ranks_before(const ScoredCandidate& a, const ScoredCandidate& b);

struct StepTrace {
  std::size_t context_length = 0;
  // The candidate set the choice was made from (after reserved-token and
  // early-EOS filtering), in backend order, with indicators and scores.
  std::vector<ScoredCandidate> candidates;
  std::string chosen;
};

struct VerseResult {
  std::string input;
  std::string text;
  std::vector<std::string> tokens;  // model-space, EOS excluded
  std::size_t rhyme_count = 0;
  bool ended_by_eos = false;
  std::vector<StepTrace> steps;
};

VerseResult generate_verse(std::string_view input_text, const lm::LanguageModel& backend,
                           const RhymeScorer& scorer, const GenerationConfig& config);

struct Poem {
  corpus::KeywordSet keywords;
  std::vector<VerseResult> verses;

  std::vector<std::string> lines() const;
};

class GenerationError : public Error {
 public:
  GenerationError(const std::string& what, Poem partial)
      : Error(what), partial_(std::move(partial)) {}
  const Poem& partial() const noexcept { return partial_; }

 private:
  Poem partial_;
};

// Verse 1 from the space-joined keywords, verse i from verse i-1.
Poem generate_poem(const corpus::KeywordSet& keywords, const lm::LanguageModel& backend,
                   const RhymeScorer& scorer, const GenerationConfig& config);

// One JSON record per decoding step:
// {"poem","verse","step","input","context_length","rhyme_weight",
//  "candidates":[{"token","logprob","indicator","score"}],"chosen"}
void write_trace(std::ostream& out, const Poem& poem, std::size_t poem_index,
                 double rhyme_weight);

}  // namespace rimes::generator

#endif  // RIMES_GENERATOR_HPP_
