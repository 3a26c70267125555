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

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "tlg/common/types.hpp"

namespace tlg {

enum class TopicKind { kLda, kLsi };

std::string to_string(TopicKind kind);
TopicKind parse_topic_kind(const std::string& text);

// Common read-only view of a trained topic model over the shared vocabulary.
class TopicModel {
 public:
  virtual ~TopicModel() = default;

  virtual TopicKind kind() const = 0;
  virtual std::size_t num_topics() const = 0;
  virtual std::size_t vocab_size() const = 0;
  // Tokens that took part in training; others are neutral during fusion.
  virtual const std::vector<std::uint8_t>& kept_mask() const = 0;
  // Per-token score for topic j: phi(j, .) for LDA, the L2-normalized
  // column of U for LSI.
  virtual std::vector<double> topic_scores(std::size_t topic) const = 0;
  virtual void save(const std::filesystem::path& path) const = 0;

  // Highest-scoring kept tokens of a topic, best first (ties by id).
  std::vector<TokenId> top_tokens(std::size_t topic, std::size_t n) const;
};

std::unique_ptr<TopicModel> load_topic_model(const std::filesystem::path& path);

}  // namespace tlg
