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

#include <span>
#include <string>
#include <vector>

#include "tlg/common/types.hpp"

namespace tlg {

// Unnormalized next-token scores S(x_i | x_<i); softmax gives the source's
// next-token distribution.
struct LogitVector {
  std::vector<double> scores;
  std::string source;

  std::size_t size() const { return scores.size(); }
};

// A causal next-token scorer over the shared vocabulary. Implementations are
// immutable after construction and safe to query concurrently.
class LogitSource {
 public:
  virtual ~LogitSource() = default;

  virtual std::string name() const = 0;
  virtual std::size_t vocab_size() const = 0;
  // Longest accepted context; 0 means unbounded.
  virtual std::size_t max_context() const = 0;
  virtual TokenId bos_id() const = 0;
  virtual TokenId eos_id() const = 0;

  // Injects bos when context is empty; rejects over-long contexts and
  // results that are the wrong length or non-finite.
  LogitVector logits(std::span<const TokenId> context) const;

 protected:
  virtual std::vector<double> compute_logits(std::span<const TokenId> context) const = 0;
};

}  // namespace tlg
