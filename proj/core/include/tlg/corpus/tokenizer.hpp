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

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "tlg/common/types.hpp"

namespace tlg {

struct SpecialIds {
  TokenId bos = 0;
  TokenId eos = 1;
  std::optional<TokenId> unk = 2;
};

// Shared token inventory: the LM and every topic model index the same ids.
class Tokenizer {
 public:
  virtual ~Tokenizer() = default;

  virtual TokenSeq encode(std::string_view text) const = 0;
  // Special tokens are omitted unless keep_special is set.
  virtual std::string decode(std::span<const TokenId> ids, bool keep_special = false) const = 0;

  virtual std::size_t vocab_size() const = 0;
  virtual const std::string& token(TokenId id) const = 0;
  virtual std::optional<TokenId> find(std::string_view token) const = 0;
  virtual SpecialIds special() const = 0;

  bool is_special(TokenId id) const;
};

// Splits text into the units merges may not cross: a chunk starts at every
// whitespace character and at every boundary between alphanumeric and
// punctuation runs. Concatenating the chunks reproduces the input.
std::vector<std::string_view> pretokenize(std::string_view text);

// Splits UTF-8 into code points; each invalid byte becomes its own unit.
std::vector<std::string_view> utf8_chars(std::string_view text);

}  // namespace tlg
