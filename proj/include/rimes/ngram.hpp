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

#ifndef RIMES_NGRAM_HPP_
#define RIMES_NGRAM_HPP_

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "rimes/backend.hpp"
#include "rimes/corpus.hpp"

namespace rimes::lm {

// Word n-gram model over "input <sep> output </s>" sequences with
// interpolated absolute discounting down to a uniform floor:
//
//   P_m(w | h) = max(c(h,w) - D, 0) / c(h) + D * N1+(h .) / c(h) * P_{m-1}(w | h')
//   P_{-1}(w)  = 1 / |V|
//
// where h' drops the oldest token of h. Unseen contexts defer to the next
// lower order. Immutable once built; top_k is safe to call concurrently.
class NgramModel final : public LanguageModel {
 public:
  static constexpr double kDiscount = 0.75;
  static constexpr int kDefaultOrder = 3;

  // Throws Error on empty pairs or order < 2.
  static NgramModel train(std::span<const corpus::TrainingPair> pairs,
                          int order = kDefaultOrder);

  // Exact inverse of save(); throws Error on a malformed file.
  static NgramModel load(std::istream& in);
  void save(std::ostream& out) const;

  int order() const noexcept { return order_; }
  std::span<const std::string> vocabulary() const noexcept { return vocab_; }
  std::optional<std::uint32_t> id(std::string_view token) const;

  // Smoothed next-token distribution, indexed by vocabulary id.
  std::vector<double> distribution(std::span<const std::string> context) const;
  double logprob(std::span<const std::string> context, std::string_view token) const;

  std::vector<TokenCandidate> top_k(const LmContext& context,
                                    std::size_t k) const override;
  std::string eos_token() const override { return std::string(kEndOfSequence); }

  struct Perplexity {
    double value = 0.0;
    std::size_t scored_tokens = 0;
    std::size_t oov_tokens = 0;
  };
  // Per-token perplexity of the output side (after the separator, EOS
  // included). Out-of-vocabulary targets are skipped and counted.
  Perplexity perplexity(std::span<const corpus::TrainingPair> pairs) const;

  // Model-space encoding of one pair.
  static std::vector<std::string> encode(const corpus::TrainingPair& pair);

  friend bool operator==(const NgramModel& a, const NgramModel& b) {
    return a.order_ == b.order_ && a.vocab_ == b.vocab_ && a.tables_ == b.tables_;
  }

 private:
  static constexpr std::uint32_t kUnknown = std::numeric_limits<std::uint32_t>::max();

  struct Counts {
    std::uint64_t total = 0;
    std::map<std::uint32_t, std::uint64_t> next;
    friend bool operator==(const Counts&, const Counts&) = default;
  };
  using Table = std::map<std::vector<std::uint32_t>, Counts>;

  NgramModel() = default;
  void index_vocabulary();
  std::vector<std::uint32_t> context_ids(std::span<const std::string> context) const;
  std::vector<double> distribution_ids(std::span<const std::uint32_t> history) const;

  int order_ = kDefaultOrder;
  std::vector<std::string> vocab_;
  std::unordered_map<std::string, std::uint32_t> ids_;
  std::vector<Table> tables_;  // tables_[m]: contexts of length m
};

}  // namespace rimes::lm

#endif  // RIMES_NGRAM_HPP_
