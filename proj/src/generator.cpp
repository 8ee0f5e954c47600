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

#include "rimes/generator.hpp"

#include <algorithm>
#include <ostream>

#include <json.hpp>

#include "rimes/tokenizer.hpp"

namespace rimes::generator {
namespace {

std::string reference_form(std::string_view token) {
  return phonetics::normalize_token(lm::unescape(token));
}

}  // namespace

void GenerationConfig::validate() const {
  if (k == 0) throw Error("k must be at least 1");
  if (min_tokens == 0) throw Error("min_tokens must be at least 1");
  if (min_tokens > max_tokens) throw Error("min_tokens must not exceed max_tokens");
  if (!(rhyme_weight >= 0.0)) throw Error("rhyme weight must be non-negative");
  if (n_verses == 0) throw Error("a poem needs at least one verse");
}

GenerationState GenerationState::from_input(std::span<const std::string> input_tokens) {
  GenerationState state;
  for (const auto& t : input_tokens) {
    std::string norm = reference_form(t);
    if (!norm.empty()) state.reference_tokens.insert(std::move(norm));
  }
  return state;
}

void GenerationState::accept(const std::string& token, bool rhymed) {
  generated.push_back(token);
  std::string norm = reference_form(token);
  if (!norm.empty()) reference_tokens.insert(std::move(norm));
  if (rhymed) ++cumulative_rhyme_count;
}

int RhymeScorer::indicator(std::string_view candidate,
                           const GenerationState& state) const {
  const std::string norm = reference_form(candidate);
  if (norm.empty() || lexicon_.find(norm) == nullptr) return 0;
  for (const auto& ref : state.reference_tokens) {
    if (phonetics::rhymes_any(norm, ref, lexicon_, vowels_)) return 1;
  }
  return 0;
}

bool ranks_before(const ScoredCandidate& a, const ScoredCandidate& b) {
  if (a.score != b.score) return a.score > b.score;
  if (a.candidate.logprob != b.candidate.logprob) {
    return a.candidate.logprob > b.candidate.logprob;
  }
  return a.candidate.token < b.candidate.token;
}

std::vector<ScoredCandidate> rerank(std::span<const lm::TokenCandidate> candidates,
                                    std::span<const int> indicators,
                                    double rhyme_weight) {
  if (indicators.size() != candidates.size()) {
    throw Error("rerank: one indicator per candidate required");
  }
  std::vector<ScoredCandidate> out;
  out.reserve(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    out.push_back({candidates[i], indicators[i],
                   candidates[i].logprob + rhyme_weight * indicators[i]});
  }
  std::stable_sort(out.begin(), out.end(), ranks_before);
  return out;
}

std::vector<ScoredCandidate> rerank(std::span<const lm::TokenCandidate> candidates,
                                    const GenerationState& state,
                                    const RhymeScorer& scorer, double rhyme_weight) {
  std::vector<int> indicators;
  indicators.reserve(candidates.size());
  for (const auto& c : candidates) indicators.push_back(scorer.indicator(c.token, state));
  return rerank(candidates, indicators, rhyme_weight);
}

VerseResult generate_verse(std::string_view input_text, const lm::LanguageModel& backend,
                           const RhymeScorer& scorer, const GenerationConfig& config) {
  config.validate();
  const auto input_tokens = lm::tokenize(input_text);
  if (input_tokens.empty()) throw Error("verse input has no tokens");

  const std::string eos = backend.eos_token();
  const std::string sep = backend.separator_token();
  lm::LmContext context = lm::LmContext::from_tokens(input_tokens);
  GenerationState state = GenerationState::from_input(input_tokens);

  VerseResult verse;
  verse.input = std::string(input_text);
  while (state.generated.size() < config.max_tokens) {
    auto candidates = backend.top_k(context, config.k);
    const bool eos_allowed = state.generated.size() >= config.min_tokens;
    std::erase_if(candidates, [&](const lm::TokenCandidate& c) {
      return c.token == sep || (!eos_allowed && c.token == eos) ||
             (c.token != eos && lm::is_reserved(c.token));
    });
    if (candidates.empty()) throw Error("vocabulary exhausted");

    std::vector<int> indicators;
    indicators.reserve(candidates.size());
    for (const auto& c : candidates) {
      indicators.push_back(c.token == eos ? 0 : scorer.indicator(c.token, state));
    }
    const auto ranked = rerank(candidates, indicators, config.rhyme_weight);
    const ScoredCandidate& best = ranked.front();

    StepTrace step;
    step.context_length = context.size();
    step.chosen = best.candidate.token;
    step.candidates.reserve(candidates.size());
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      step.candidates.push_back({candidates[i], indicators[i],
                                 candidates[i].logprob + config.rhyme_weight * indicators[i]});
    }
    verse.steps.push_back(std::move(step));

    if (best.candidate.token == eos) {
      verse.ended_by_eos = true;
      break;
    }
    state.accept(best.candidate.token, best.indicator == 1);
    context.push(best.candidate.token);
  }

  verse.tokens = state.generated;
  verse.rhyme_count = state.cumulative_rhyme_count;
  verse.text = lm::detokenize(verse.tokens);
  return verse;
}

std::vector<std::string> Poem::lines() const {
  std::vector<std::string> out;
  out.reserve(verses.size());
  for (const auto& v : verses) out.push_back(v.text);
  return out;
}

Poem generate_poem(const corpus::KeywordSet& keywords, const lm::LanguageModel& backend,
                   const RhymeScorer& scorer, const GenerationConfig& config) {
  config.validate();
  Poem poem{keywords, {}};
  std::string input = keywords.joined();
  for (std::size_t i = 0; i < config.n_verses; ++i) {
    try {
      poem.verses.push_back(generate_verse(input, backend, scorer, config));
    } catch (const std::exception& e) {
      throw GenerationError("verse " + std::to_string(i + 1) + ": " + e.what(),
                            std::move(poem));
    }
    input = poem.verses.back().text;
  }
  return poem;
}

void write_trace(std::ostream& out, const Poem& poem, std::size_t poem_index,
                 double rhyme_weight) {
  using nlohmann::json;
  for (std::size_t v = 0; v < poem.verses.size(); ++v) {
    const auto& verse = poem.verses[v];
    for (std::size_t s = 0; s < verse.steps.size(); ++s) {
      const auto& step = verse.steps[s];
      json cands = json::array();
      for (const auto& c : step.candidates) {
        cands.push_back({{"token", c.candidate.token},
                         {"logprob", c.candidate.logprob},
                         {"indicator", c.indicator},
                         {"score", c.score}});
      }
      out << json{{"poem", poem_index},
                  {"verse", v},
                  {"step", s},
                  {"input", verse.input},
                  {"context_length", step.context_length},
                  {"rhyme_weight", rhyme_weight},
                  {"candidates", std::move(cands)},
                  {"chosen", step.chosen}}
                 .dump()
          << '\n';
    }
  }
}

}  // namespace rimes::generator
