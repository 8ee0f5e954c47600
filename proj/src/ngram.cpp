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

#include "rimes/ngram.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace rimes::lm {
namespace {

constexpr std::string_view kMagic = "RIMES-NGRAM 1";

[[noreturn]] void malformed(const std::string& why) {
  throw Error("malformed model file: " + why);
}

std::string next_line(std::istream& in, const char* what) {
  std::string line;
  if (!std::getline(in, line)) malformed(std::string("missing ") + what);
  return line;
}

std::uint64_t parse_uint(std::string_view s, const char* what) {
  std::uint64_t v = 0;
  if (s.empty()) malformed(std::string("empty ") + what);
  for (char c : s) {
    if (c < '0' || c > '9') malformed(std::string("bad ") + what + " '" + std::string(s) + "'");
    v = v * 10 + static_cast<std::uint64_t>(c - '0');
  }
  return v;
}

std::uint64_t expect_keyword(std::istream& in, std::string_view key) {
  const std::string line = next_line(in, key.data());
  if (line.size() <= key.size() + 1 || line.compare(0, key.size(), key) != 0 ||
      line[key.size()] != ' ') {
    malformed("expected '" + std::string(key) + " <n>', got '" + line + "'");
  }
  return parse_uint(std::string_view(line).substr(key.size() + 1), key.data());
}

}  // namespace

std::vector<std::string> NgramModel::encode(const corpus::TrainingPair& pair) {
  std::vector<std::string> seq;
  for (const auto& t : tokenize(pair.input)) seq.push_back(escape(t));
  seq.emplace_back(kSeparator);
  for (const auto& t : tokenize(pair.output)) seq.push_back(escape(t));
  seq.emplace_back(kEndOfSequence);
  return seq;
}

NgramModel NgramModel::train(std::span<const corpus::TrainingPair> pairs,
                             int order) {
  if (order < 2) throw Error("n-gram order must be at least 2");
  if (pairs.empty()) throw Error("cannot train on an empty set of pairs");

  std::vector<std::vector<std::string>> sequences;
  sequences.reserve(pairs.size());
  std::set<std::string> vocab{std::string(kSeparator), std::string(kEndOfSequence)};
  for (const auto& p : pairs) {
    sequences.push_back(encode(p));
    vocab.insert(sequences.back().begin(), sequences.back().end());
  }

  NgramModel model;
  model.order_ = order;
  model.vocab_.assign(vocab.begin(), vocab.end());
  model.index_vocabulary();
  model.tables_.resize(static_cast<std::size_t>(order));

  for (const auto& seq : sequences) {
    std::vector<std::uint32_t> ids;
    ids.reserve(seq.size());
    for (const auto& t : seq) ids.push_back(model.ids_.at(t));
    for (std::size_t i = 0; i < ids.size(); ++i) {
      const std::size_t max_m = std::min<std::size_t>(i, static_cast<std::size_t>(order - 1));
      for (std::size_t m = 0; m <= max_m; ++m) {
        std::vector<std::uint32_t> ctx(ids.begin() + static_cast<std::ptrdiff_t>(i - m),
                                       ids.begin() + static_cast<std::ptrdiff_t>(i));
        Counts& c = model.tables_[m][std::move(ctx)];
        ++c.total;
        ++c.next[ids[i]];
      }
    }
  }
  return model;
}

void NgramModel::index_vocabulary() {
  ids_.clear();
  for (std::uint32_t i = 0; i < vocab_.size(); ++i) ids_.emplace(vocab_[i], i);
}

std::optional<std::uint32_t> NgramModel::id(std::string_view token) const {
  const auto it = ids_.find(std::string(token));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::uint32_t> NgramModel::context_ids(
    std::span<const std::string> context) const {
  const std::size_t keep = std::min(context.size(), static_cast<std::size_t>(order_ - 1));
  std::vector<std::uint32_t> ids;
  ids.reserve(keep);
  for (const auto& t : context.subspan(context.size() - keep)) {
    const auto it = ids_.find(t);
    ids.push_back(it == ids_.end() ? kUnknown : it->second);
  }
  return ids;
}

std::vector<double> NgramModel::distribution_ids(
    std::span<const std::uint32_t> history) const {
  const std::size_t v = vocab_.size();
  std::vector<double> p(v, 1.0 / static_cast<double>(v));
  for (std::size_t m = 0; m <= history.size(); ++m) {
    const std::vector<std::uint32_t> ctx(history.end() - static_cast<std::ptrdiff_t>(m),
                                         history.end());
    const auto it = tables_[m].find(ctx);
    if (it == tables_[m].end()) break;  // longer contexts are unseen too
    const Counts& c = it->second;
    const double total = static_cast<double>(c.total);
    const double backoff = kDiscount * static_cast<double>(c.next.size()) / total;
    for (double& x : p) x *= backoff;
    for (const auto& [w, n] : c.next) {
      p[w] += std::max(static_cast<double>(n) - kDiscount, 0.0) / total;
    }
  }
  return p;
}

std::vector<double> NgramModel::distribution(std::span<const std::string> context) const {
  const auto ids = context_ids(context);
  return distribution_ids(ids);
}

double NgramModel::logprob(std::span<const std::string> context,
                           std::string_view token) const {
  const auto w = id(token);
  if (!w) throw Error("token '" + std::string(token) + "' is not in the vocabulary");
  return std::log(distribution(context)[*w]);
}

std::vector<TokenCandidate> NgramModel::top_k(const LmContext& context,
                                              std::size_t k) const {
  if (k == 0) throw Error("top_k requires k >= 1");
  const auto p = distribution(context.tokens());
  std::vector<std::uint32_t> order(vocab_.size());
  for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;
  const std::size_t n = std::min(k, order.size());
  // Vocabulary ids follow lexicographic token order, so comparing ids
  // implements the token tie-break.
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n),
                    order.end(), [&](std::uint32_t a, std::uint32_t b) {
                      if (p[a] != p[b]) return p[a] > p[b];
                      return a < b;
                    });
  std::vector<TokenCandidate> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back({vocab_[order[i]], std::log(p[order[i]])});
  }
  return out;
}

NgramModel::Perplexity NgramModel::perplexity(
    std::span<const corpus::TrainingPair> pairs) const {
  Perplexity result;
  double nll = 0.0;
  for (const auto& pair : pairs) {
    const auto seq = encode(pair);
    const auto sep = std::find(seq.begin(), seq.end(), kSeparator) - seq.begin();
    std::vector<std::uint32_t> ids;
    for (const auto& t : seq) {
      const auto it = ids_.find(t);
      ids.push_back(it == ids_.end() ? kUnknown : it->second);
    }
    for (std::size_t i = static_cast<std::size_t>(sep) + 1; i < ids.size(); ++i) {
      if (ids[i] == kUnknown) {
        ++result.oov_tokens;
        continue;
      }
      const std::size_t keep = std::min(i, static_cast<std::size_t>(order_ - 1));
      const std::span<const std::uint32_t> history(ids.data() + (i - keep), keep);
      nll -= std::log(distribution_ids(history)[ids[i]]);
      ++result.scored_tokens;
    }
  }
  result.value = result.scored_tokens == 0
                     ? 0.0
                     : std::exp(nll / static_cast<double>(result.scored_tokens));
  return result;
}

void NgramModel::save(std::ostream& out) const {
  out << kMagic << '\n';
  out << "order " << order_ << '\n';
  out << "vocab " << vocab_.size() << '\n';
  for (const auto& t : vocab_) out << t << '\n';
  std::size_t contexts = 0;
  for (const auto& t : tables_) contexts += t.size();
  out << "contexts " << contexts << '\n';
  for (std::size_t m = 0; m < tables_.size(); ++m) {
    for (const auto& [ctx, counts] : tables_[m]) {
      out << m;
      for (auto id : ctx) out << ' ' << id;
      out << '\t';
      bool first = true;
      for (const auto& [w, n] : counts.next) {
        if (!first) out << ' ';
        first = false;
        out << w << ':' << n;
      }
      out << '\n';
    }
  }
}

NgramModel NgramModel::load(std::istream& in) {
  if (next_line(in, "header") != kMagic) malformed("bad magic header");
  NgramModel model;
  const auto order = expect_keyword(in, "order");
  if (order < 2 || order > 64) malformed("order out of range");
  model.order_ = static_cast<int>(order);
  const auto vocab_size = expect_keyword(in, "vocab");
  for (std::uint64_t i = 0; i < vocab_size; ++i) {
    model.vocab_.push_back(next_line(in, "vocabulary entry"));
  }
  if (!std::is_sorted(model.vocab_.begin(), model.vocab_.end()) ||
      std::adjacent_find(model.vocab_.begin(), model.vocab_.end()) != model.vocab_.end()) {
    malformed("vocabulary must be sorted and unique");
  }
  model.index_vocabulary();
  if (!model.ids_.contains(std::string(kEndOfSequence)) ||
      !model.ids_.contains(std::string(kSeparator))) {
    malformed("vocabulary lacks reserved tokens");
  }
  model.tables_.resize(static_cast<std::size_t>(model.order_));
  const auto contexts = expect_keyword(in, "contexts");
  for (std::uint64_t c = 0; c < contexts; ++c) {
    const std::string line = next_line(in, "context record");
    const auto tab = line.find('\t');
    if (tab == std::string::npos) malformed("context record without tab");
    std::istringstream head(line.substr(0, tab));
    std::string field;
    head >> field;
    const auto m = parse_uint(field, "context length");
    if (m >= model.tables_.size()) malformed("context longer than order");
    std::vector<std::uint32_t> ctx;
    while (head >> field) {
      const auto id = parse_uint(field, "context id");
      if (id >= vocab_size) malformed("context id out of range");
      ctx.push_back(static_cast<std::uint32_t>(id));
    }
    if (ctx.size() != m) malformed("context length mismatch");
    Counts counts;
    std::istringstream body(line.substr(tab + 1));
    while (body >> field) {
      const auto colon = field.find(':');
      if (colon == std::string::npos) malformed("count without ':'");
      const auto w = parse_uint(std::string_view(field).substr(0, colon), "token id");
      const auto n = parse_uint(std::string_view(field).substr(colon + 1), "count");
      if (w >= vocab_size || n == 0) malformed("bad count entry '" + field + "'");
      counts.next[static_cast<std::uint32_t>(w)] = n;
      counts.total += n;
    }
    if (counts.next.empty()) malformed("context without continuations");
    if (!model.tables_[m].emplace(std::move(ctx), std::move(counts)).second) {
      malformed("duplicate context");
    }
  }
  return model;
}

}  // namespace rimes::lm
