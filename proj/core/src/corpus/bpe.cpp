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

#include "tlg/corpus/bpe.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <thread>

#include "tlg/common/blob_io.hpp"
#include "tlg/common/error.hpp"

namespace tlg {

namespace {

const std::string kBos = "<|bos|>";
const std::string kEos = "<|eos|>";
const std::string kUnk = "<|unk|>";

using Pair = std::pair<TokenId, TokenId>;

struct PairKeyHash {
  std::size_t operator()(const Pair& p) const noexcept {
    return std::hash<std::uint64_t>{}((static_cast<std::uint64_t>(p.first) << 32) ^
                                      static_cast<std::uint32_t>(p.second));
  }
};

using PairCounts = std::unordered_map<Pair, long long, PairKeyHash>;

void count_pairs(const std::vector<TokenSeq>& words, const std::vector<long long>& freq,
                 std::size_t begin, std::size_t end, PairCounts& out) {
  for (std::size_t w = begin; w < end; ++w) {
    const auto& s = words[w];
    for (std::size_t i = 0; i + 1 < s.size(); ++i) out[{s[i], s[i + 1]}] += freq[w];
  }
}

PairCounts count_all_pairs(const std::vector<TokenSeq>& words,
                           const std::vector<long long>& freq, unsigned threads) {
  PairCounts total;
  if (threads <= 1 || words.size() < 2 * threads) {
    count_pairs(words, freq, 0, words.size(), total);
    return total;
  }
  std::vector<PairCounts> partial(threads);
  std::vector<std::thread> pool;
  const std::size_t step = (words.size() + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    const std::size_t b = std::min(words.size(), t * step);
    const std::size_t e = std::min(words.size(), b + step);
    pool.emplace_back([&, t, b, e] { count_pairs(words, freq, b, e, partial[t]); });
  }
  for (auto& th : pool) th.join();
  for (const auto& part : partial) {
    for (const auto& [k, v] : part) total[k] += v;
  }
  return total;
}

void apply_merge(TokenSeq& s, const Pair& pair, TokenId result) {
  std::size_t out = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i + 1 < s.size() && s[i] == pair.first && s[i + 1] == pair.second) {
      s[out++] = result;
      ++i;
    } else {
      s[out++] = s[i];
    }
  }
  s.resize(out);
}

}  // namespace

TokenId BpeModel::intern(const std::string& s) {
  auto it = token_to_id_.find(s);
  if (it != token_to_id_.end()) return it->second;
  const auto id = static_cast<TokenId>(vocab_.size());
  vocab_.push_back(s);
  token_to_id_.emplace(s, id);
  return id;
}

BpeModel BpeModel::train(std::span<const std::string> texts, const BpeTrainOptions& options) {
  std::map<std::string, long long> chunk_counts;
  for (const auto& text : texts) {
    for (auto chunk : pretokenize(text)) ++chunk_counts[std::string(chunk)];
  }
  if (chunk_counts.empty()) throw DataError("train_bpe: empty corpus");

  std::set<std::string> alphabet;
  for (const auto& [chunk, n] : chunk_counts) {
    for (auto ch : utf8_chars(chunk)) alphabet.emplace(ch);
  }

  BpeModel model;
  model.special_ = {model.intern(kBos), model.intern(kEos), model.intern(kUnk)};
  model.alphabet_.assign(alphabet.begin(), alphabet.end());
  for (const auto& ch : model.alphabet_) model.intern(ch);
  if (options.vocab_size <= model.vocab_.size()) {
    throw InvalidArgument("train_bpe: vocab_size " + std::to_string(options.vocab_size) +
                          " does not exceed base alphabet plus specials (" +
                          std::to_string(model.vocab_.size()) + ")");
  }

  std::vector<TokenSeq> words;
  std::vector<long long> freq;
  words.reserve(chunk_counts.size());
  for (const auto& [chunk, n] : chunk_counts) {
    TokenSeq s;
    for (auto ch : utf8_chars(chunk)) s.push_back(model.token_to_id_.at(std::string(ch)));
    words.push_back(std::move(s));
    freq.push_back(n);
  }

  while (model.vocab_.size() < options.vocab_size) {
    const PairCounts counts = count_all_pairs(words, freq, std::max(1u, options.threads));
    if (counts.empty()) break;
    const Pair* best = nullptr;
    long long best_count = 0;
    for (const auto& [pair, n] : counts) {
      if (best == nullptr || n > best_count ||
          (n == best_count &&
           std::tie(model.vocab_[pair.first], model.vocab_[pair.second]) <
               std::tie(model.vocab_[best->first], model.vocab_[best->second]))) {
        best = &pair;
        best_count = n;
      }
    }
    const Pair chosen = *best;
    const std::string& left = model.vocab_[chosen.first];
    const std::string& right = model.vocab_[chosen.second];
    model.merges_.emplace_back(left, right);
    const TokenId result = model.intern(left + right);
    for (auto& w : words) apply_merge(w, chosen, result);
  }
  model.rebuild_index();
  return model;
}

void BpeModel::rebuild_index() {
  token_to_id_.clear();
  for (std::size_t i = 0; i < vocab_.size(); ++i) {
    if (!token_to_id_.emplace(vocab_[i], static_cast<TokenId>(i)).second) {
      throw DataError("bpe: duplicate vocabulary entry '" + vocab_[i] + "'");
    }
  }
  rules_.clear();
  for (std::size_t r = 0; r < merges_.size(); ++r) {
    const auto& [l, rt] = merges_[r];
    auto li = token_to_id_.find(l);
    auto ri = token_to_id_.find(rt);
    auto res = token_to_id_.find(l + rt);
    if (li == token_to_id_.end() || ri == token_to_id_.end() || res == token_to_id_.end()) {
      throw DataError("bpe: merge '" + l + "' + '" + rt + "' references unknown tokens");
    }
    // The first recorded rank of a pair wins.
    rules_.emplace(Pair{li->second, ri->second}, MergeRule{r, res->second});
  }
}

void BpeModel::encode_chunk(std::string_view chunk, TokenSeq& out) const {
  TokenSeq s;
  for (auto ch : utf8_chars(chunk)) {
    auto it = token_to_id_.find(std::string(ch));
    s.push_back(it != token_to_id_.end() && !is_special(it->second) ? it->second : *special_.unk);
  }
  while (s.size() > 1) {
    std::size_t best_rank = merges_.size();
    Pair best{};
    TokenId result = 0;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
      auto it = rules_.find({s[i], s[i + 1]});
      if (it != rules_.end() && it->second.rank < best_rank) {
        best_rank = it->second.rank;
        best = {s[i], s[i + 1]};
        result = it->second.result;
      }
    }
    if (best_rank == merges_.size()) break;
    apply_merge(s, best, result);
  }
  out.insert(out.end(), s.begin(), s.end());
}

TokenSeq BpeModel::encode(std::string_view text) const {
  TokenSeq out;
  for (auto chunk : pretokenize(text)) encode_chunk(chunk, out);
  return out;
}

std::string BpeModel::decode(std::span<const TokenId> ids, bool keep_special) const {
  std::string out;
  for (TokenId id : ids) {
    const std::string& t = token(id);
    if (!keep_special && is_special(id)) continue;
    out += t;
  }
  return out;
}

const std::string& BpeModel::token(TokenId id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= vocab_.size()) {
    throw InvalidArgument("token id " + std::to_string(id) + " out of range [0, " +
                          std::to_string(vocab_.size()) + ")");
  }
  return vocab_[static_cast<std::size_t>(id)];
}

std::optional<TokenId> BpeModel::find(std::string_view token) const {
  auto it = token_to_id_.find(std::string(token));
  if (it == token_to_id_.end()) return std::nullopt;
  return it->second;
}

nlohmann::json BpeModel::to_json() const {
  nlohmann::json merges = nlohmann::json::array();
  for (const auto& [l, r] : merges_) merges.push_back({l, r});
  return {{"merges", merges},
          {"vocab", vocab_},
          {"alphabet", alphabet_},
          {"special", {{"bos", special_.bos}, {"eos", special_.eos}, {"unk", *special_.unk}}}};
}

BpeModel BpeModel::from_json(const nlohmann::json& j) {
  BpeModel model;
  try {
    for (const auto& m : j.at("merges")) {
      model.merges_.emplace_back(m.at(0).get<std::string>(), m.at(1).get<std::string>());
    }
    model.vocab_ = j.at("vocab").get<std::vector<std::string>>();
    const auto& sp = j.at("special");
    model.special_ = {sp.at("bos").get<TokenId>(), sp.at("eos").get<TokenId>(),
                      sp.at("unk").get<TokenId>()};
    if (j.contains("alphabet")) {
      model.alphabet_ = j["alphabet"].get<std::vector<std::string>>();
    } else {
      for (std::size_t i = 0; i < model.vocab_.size(); ++i) {
        const auto id = static_cast<TokenId>(i);
        if (!model.is_special(id) && utf8_chars(model.vocab_[i]).size() == 1) {
          model.alphabet_.push_back(model.vocab_[i]);
        }
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("bpe json: ") + e.what());
  }
  const auto n = static_cast<TokenId>(model.vocab_.size());
  for (TokenId id : {model.special_.bos, model.special_.eos, *model.special_.unk}) {
    if (id < 0 || id >= n) throw DataError("bpe json: special id out of range");
  }
  model.rebuild_index();
  return model;
}

BpeModel BpeModel::load(const std::filesystem::path& path) {
  return from_json(read_json_file(path));
}

void BpeModel::save(const std::filesystem::path& path) const {
  write_json_file(path, to_json());
}

VocabTokenizer::VocabTokenizer(std::vector<std::string> vocab, SpecialIds special)
    : vocab_(std::move(vocab)), special_(special) {
  for (std::size_t i = 0; i < vocab_.size(); ++i) {
    const auto id = static_cast<TokenId>(i);
    if (is_special(id) || vocab_[i].empty()) continue;
    token_to_id_.emplace(vocab_[i], id);
    max_len_ = std::max(max_len_, vocab_[i].size());
  }
}

TokenSeq VocabTokenizer::encode(std::string_view text) const {
  TokenSeq out;
  std::size_t i = 0;
  while (i < text.size()) {
    std::size_t len = std::min(max_len_, text.size() - i);
    bool matched = false;
    for (; len > 0; --len) {
      auto it = token_to_id_.find(std::string(text.substr(i, len)));
      if (it != token_to_id_.end()) {
        out.push_back(it->second);
        i += len;
        matched = true;
        break;
      }
    }
    if (!matched) {
      const std::size_t skip = utf8_chars(text.substr(i, 4)).front().size();
      if (special_.unk) out.push_back(*special_.unk);
      i += skip;
    }
  }
  return out;
}

std::string VocabTokenizer::decode(std::span<const TokenId> ids, bool keep_special) const {
  std::string out;
  for (TokenId id : ids) {
    const std::string& t = token(id);
    if (!keep_special && is_special(id)) continue;
    out += t;
  }
  return out;
}

const std::string& VocabTokenizer::token(TokenId id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= vocab_.size()) {
    throw InvalidArgument("token id " + std::to_string(id) + " out of range [0, " +
                          std::to_string(vocab_.size()) + ")");
  }
  return vocab_[static_cast<std::size_t>(id)];
}

std::optional<TokenId> VocabTokenizer::find(std::string_view token) const {
  auto it = token_to_id_.find(std::string(token));
  if (it == token_to_id_.end()) return std::nullopt;
  return it->second;
}

}  // namespace tlg
