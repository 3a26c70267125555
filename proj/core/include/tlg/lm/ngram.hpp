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
#include <span>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "tlg/lm/source.hpp"

namespace tlg {

struct NgramOptions {
  std::size_t order = 3;
  // Absolute discount shared by all orders; <= 0 estimates one per order as
  // n1 / (n1 + 2 n2) from counts-of-counts.
  double discount = 0.0;
};

// Interpolated Kneser-Ney. The highest order uses raw counts, lower orders
// continuation counts; order one interpolates with the uniform distribution.
// Every sequence is padded with order-1 bos tokens on the left and one eos.
class NgramModel final : public LogitSource {
 public:
  static NgramModel train(std::span<const TokenSeq> documents, std::size_t vocab_size, TokenId bos,
                          TokenId eos, const NgramOptions& options = {});
  static NgramModel from_json(const nlohmann::json& j);
  static NgramModel load(const std::filesystem::path& path);

  nlohmann::json to_json() const;
  void save(const std::filesystem::path& path) const;

  std::string name() const override { return "ngram"; }
  std::size_t vocab_size() const override { return vocab_size_; }
  std::size_t max_context() const override { return 0; }
  TokenId bos_id() const override { return bos_; }
  TokenId eos_id() const override { return eos_; }

  std::size_t order() const { return order_; }
  const std::vector<double>& discounts() const { return discounts_; }

  // P(. | context) over the whole vocabulary.
  std::vector<double> distribution(std::span<const TokenId> context) const;
  // exp of the mean negative log-probability of every token and the final eos.
  double perplexity(std::span<const TokenSeq> documents) const;

 protected:
  std::vector<double> compute_logits(std::span<const TokenId> context) const override;

 private:
  struct SeqHash {
    std::size_t operator()(const TokenSeq& s) const noexcept;
  };
  struct ContextStats {
    double total = 0.0;
    std::vector<std::pair<TokenId, double>> next;  // sorted by id
  };
  using Level = std::unordered_map<TokenSeq, ContextStats, SeqHash>;

  std::size_t order_ = 3;
  std::size_t vocab_size_ = 0;
  TokenId bos_ = 0;
  TokenId eos_ = 1;
  std::vector<double> discounts_;  // index k-1 for order k
  std::vector<Level> levels_;      // index k-1 holds contexts of length k-1
};

}  // namespace tlg
