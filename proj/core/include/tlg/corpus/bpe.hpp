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

#pragma once

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "tlg/corpus/tokenizer.hpp"

namespace tlg {

struct BpeTrainOptions {
  std::size_t vocab_size = 2000;
  // Pair counting split across this many threads; merges are identical to
  // the single-threaded run.
  unsigned threads = 1;
};

// Byte-pair encoding over UTF-8 code points. Ids: the three specials first,
// then the sorted base alphabet, then one id per distinct merge result.
class BpeModel final : public Tokenizer {
 public:
  BpeModel() = default;

  static BpeModel train(std::span<const std::string> texts, const BpeTrainOptions& options);
  static BpeModel from_json(const nlohmann::json& j);
  static BpeModel load(const std::filesystem::path& path);

  nlohmann::json to_json() const;
  void save(const std::filesystem::path& path) const;

  TokenSeq encode(std::string_view text) const override;
  std::string decode(std::span<const TokenId> ids, bool keep_special = false) const override;
  std::size_t vocab_size() const override { return vocab_.size(); }
  const std::string& token(TokenId id) const override;
  std::optional<TokenId> find(std::string_view token) const override;
  SpecialIds special() const override { return special_; }

  const std::vector<std::string>& base_alphabet() const { return alphabet_; }
  const std::vector<std::pair<std::string, std::string>>& merges() const { return merges_; }
  const std::vector<std::string>& vocab() const { return vocab_; }

 private:
  struct PairHash {
    std::size_t operator()(const std::pair<TokenId, TokenId>& p) const noexcept {
      return std::hash<std::uint64_t>{}((static_cast<std::uint64_t>(p.first) << 32) ^
                                        static_cast<std::uint32_t>(p.second));
    }
  };
  struct MergeRule {
    std::size_t rank;
    TokenId result;
  };

  TokenId intern(const std::string& s);
  void rebuild_index();
  void encode_chunk(std::string_view chunk, TokenSeq& out) const;

  std::vector<std::string> alphabet_;
  std::vector<std::pair<std::string, std::string>> merges_;
  std::vector<std::string> vocab_;
  SpecialIds special_;
  std::unordered_map<std::string, TokenId> token_to_id_;
  std::unordered_map<std::pair<TokenId, TokenId>, MergeRule, PairHash> rules_;
};

// Greedy longest-match tokenizer over a fixed vocabulary, used when a remote
// LM dictates the token inventory and no merge list is available.
class VocabTokenizer final : public Tokenizer {
 public:
  VocabTokenizer(std::vector<std::string> vocab, SpecialIds special);

  TokenSeq encode(std::string_view text) const override;
  std::string decode(std::span<const TokenId> ids, bool keep_special = false) const override;
  std::size_t vocab_size() const override { return vocab_.size(); }
  const std::string& token(TokenId id) const override;
  std::optional<TokenId> find(std::string_view token) const override;
  SpecialIds special() const override { return special_; }

 private:
  std::vector<std::string> vocab_;
  SpecialIds special_;
  std::unordered_map<std::string, TokenId> token_to_id_;
  std::size_t max_len_ = 1;
};

}  // namespace tlg
