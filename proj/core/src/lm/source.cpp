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

#include "tlg/lm/source.hpp"

#include <cmath>

#include "tlg/common/error.hpp"

namespace tlg {

LogitVector LogitSource::logits(std::span<const TokenId> context) const {
  const TokenId bos = bos_id();
  std::span<const TokenId> ctx = context;
  if (ctx.empty()) ctx = std::span<const TokenId>(&bos, 1);
  const std::size_t limit = max_context();
  if (limit != 0 && ctx.size() > limit) {
    throw InvalidArgument(name() + ": context of " + std::to_string(ctx.size()) +
                          " tokens exceeds the maximum of " + std::to_string(limit));
  }
  const auto n = static_cast<TokenId>(vocab_size());
  for (TokenId t : ctx) {
    if (t < 0 || t >= n) {
      throw InvalidArgument(name() + ": context token " + std::to_string(t) + " outside vocabulary");
    }
  }
  LogitVector out{compute_logits(ctx), name()};
  if (out.scores.size() != vocab_size()) {
    throw ProtocolError(name() + ": returned " + std::to_string(out.scores.size()) +
                        " logits for a vocabulary of " + std::to_string(vocab_size()));
  }
  for (double s : out.scores) {
    if (!std::isfinite(s)) throw DataError(name() + ": non-finite logit");
  }
  return out;
}

}  // namespace tlg
