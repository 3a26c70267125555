// Copyright 2026 The tlg Authors.
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

#include "tlg/lm/ngram.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>

#include "tlg/common/blob_io.hpp"
#include "tlg/common/error.hpp"

namespace tlg {

std::size_t NgramModel::SeqHash::operator()(const TokenSeq& s) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (TokenId t : s) {
    h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(t));
    h *= 0x100000001b3ULL;
  }
  return h;
}

NgramModel NgramModel::train(std::span<const TokenSeq> documents, std::size_t vocab_size,
                             TokenId bos, TokenId eos, const NgramOptions& options) {
  if (options.order < 1 || options.order > 5) {
    throw InvalidArgument("train_ngram: order must be in [1, 5]");
  }
  if (documents.empty()) throw DataError("train_ngram: empty corpus");
  const std::size_t n = options.order;

  // Highest-order counts keyed by the full n-gram.
  std::map<TokenSeq, double> top;
  for (const auto& doc : documents) {
    TokenSeq seq(n - 1, bos);
    seq.insert(seq.end(), doc.begin(), doc.end());
    seq.push_back(eos);
    for (std::size_t i = n - 1; i < seq.size(); ++i) {
      ++top[TokenSeq(seq.begin() + static_cast<std::ptrdiff_t>(i + 1 - n),
                     seq.begin() + static_cast<std::ptrdiff_t>(i + 1))];
    }
  }

  // grams[k-1]: order-k gram -> count (raw for k = n, continuation below).
  std::vector<std::map<TokenSeq, double>> grams(n);
  grams[n - 1] = std::move(top);
  for (std::size_t k = n - 1; k >= 1; --k) {
    for (const auto& [gram, c] : grams[k]) {
      // One distinct left extension of the suffix.
      grams[k - 1][TokenSeq(gram.begin() + 1, gram.end())] += 1.0;
    }
  }

  NgramModel model;
  model.order_ = n;
  model.vocab_size_ = vocab_size;
  model.bos_ = bos;
  model.eos_ = eos;
  model.discounts_.resize(n);
  model.levels_.resize(n);
  for (std::size_t k = 1; k <= n; ++k) {
    double d = options.discount;
    if (d <= 0.0) {
      double n1 = 0.0;
      double n2 = 0.0;
      for (const auto& [g, c] : grams[k - 1]) {
        if (c == 1.0) n1 += 1.0;
        if (c == 2.0) n2 += 1.0;
      }
      d = n1 + 2.0 * n2 > 0.0 ? n1 / (n1 + 2.0 * n2) : 0.5;
      d = std::clamp(d, 0.05, 0.95);
    }
    if (d >= 1.0) throw InvalidArgument("train_ngram: discount must be below 1");
    model.discounts_[k - 1] = d;
    for (const auto& [gram, c] : grams[k - 1]) {
      TokenSeq ctx(gram.begin(), gram.end() - 1);
      auto& stats = model.levels_[k - 1][ctx];
      stats.total += c;
      stats.next.emplace_back(gram.back(), c);
    }
  }
  return model;
}

std::vector<double> NgramModel::distribution(std::span<const TokenId> context) const {
  const std::size_t n = order_;
  TokenSeq effective(n - 1, bos_);
  effective.insert(effective.end(), context.begin(), context.end());

  std::vector<double> p(vocab_size_, 1.0 / static_cast<double>(vocab_size_));
  for (std::size_t k = 1; k <= n; ++k) {
    const TokenSeq ctx(effective.end() - static_cast<std::ptrdiff_t>(k - 1), effective.end());
    const auto it = levels_[k - 1].find(ctx);
    if (it == levels_[k - 1].end()) continue;
    const auto& stats = it->second;
    const double d = discounts_[k - 1];
    const double backoff = d * static_cast<double>(stats.next.size()) / stats.total;
    for (double& v : p) v *= backoff;
    for (const auto& [w, c] : stats.next) {
      p[static_cast<std::size_t>(w)] += std::max(c - d, 0.0) / stats.total;
    }
  }
  return p;
}

std::vector<double> NgramModel::compute_logits(std::span<const TokenId> context) const {
  auto p = distribution(context);
  for (double& v : p) v = std::log(v);
  return p;
}

double NgramModel::perplexity(std::span<const TokenSeq> documents) const {
  double nll = 0.0;
  std::size_t count = 0;
  for (const auto& doc : documents) {
    TokenSeq seq(doc.begin(), doc.end());
    seq.push_back(eos_);
    for (std::size_t i = 0; i < seq.size(); ++i) {
      const auto dist = distribution(std::span<const TokenId>(seq.data(), i));
      nll -= std::log(dist[static_cast<std::size_t>(seq[i])]);
      ++count;
    }
  }
  if (count == 0) throw InvalidArgument("perplexity: no tokens");
  return std::exp(nll / static_cast<double>(count));
}

nlohmann::json NgramModel::to_json() const {
  nlohmann::json levels = nlohmann::json::array();
  for (const auto& level : levels_) {
    // Sorted for byte-stable output.
    std::map<TokenSeq, const ContextStats*> sorted;
    for (const auto& [ctx, stats] : level) sorted.emplace(ctx, &stats);
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& [ctx, stats] : sorted) {
      nlohmann::json next = nlohmann::json::array();
      for (const auto& [w, c] : stats->next) next.push_back({w, c});
      entries.push_back({{"ctx", ctx}, {"next", next}});
    }
    levels.push_back(entries);
  }
  return {{"kind", "ngram"},     {"order", order_},         {"vocab_size", vocab_size_},
          {"bos", bos_},         {"eos", eos_},             {"discounts", discounts_},
          {"levels", levels}};
}

NgramModel NgramModel::from_json(const nlohmann::json& j) {
  NgramModel model;
  try {
    model.order_ = j.at("order").get<std::size_t>();
    model.vocab_size_ = j.at("vocab_size").get<std::size_t>();
    model.bos_ = j.at("bos").get<TokenId>();
    model.eos_ = j.at("eos").get<TokenId>();
    model.discounts_ = j.at("discounts").get<std::vector<double>>();
    for (const auto& level : j.at("levels")) {
      Level lv;
      for (const auto& e : level) {
        ContextStats stats;
        for (const auto& pair : e.at("next")) {
          stats.next.emplace_back(pair.at(0).get<TokenId>(), pair.at(1).get<double>());
          stats.total += stats.next.back().second;
        }
        lv.emplace(e.at("ctx").get<TokenSeq>(), std::move(stats));
      }
      model.levels_.push_back(std::move(lv));
    }
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("ngram json: ") + e.what());
  }
  if (model.levels_.size() != model.order_ || model.discounts_.size() != model.order_) {
    throw DataError("ngram json: level count does not match order");
  }
  return model;
}

NgramModel NgramModel::load(const std::filesystem::path& path) {
  return from_json(read_json_file(path));
}

void NgramModel::save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  out << to_json().dump() << '\n';
}

}  // namespace tlg
