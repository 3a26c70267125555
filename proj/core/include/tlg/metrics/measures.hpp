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
#include <vector>

#include "tlg/common/types.hpp"
#include "tlg/metrics/word_vectors.hpp"

namespace tlg {

inline constexpr double kKlFloor = 1e-12;

double entropy(std::span<const double> p);
// H(p, q) with q floored at kKlFloor.
double cross_entropy(std::span<const double> p, std::span<const double> q);
// KL(p || q), q floored at kKlFloor; never negative.
double surprise(std::span<const double> p, std::span<const double> q);

struct CoherenceResult {
  double value = 0.0;
  std::size_t used = 0;
  std::size_t dropped = 0;  // out-of-vocabulary words
};

CoherenceResult coherence(std::span<const TokenId> words, const WordVectors& vectors,
                          bool exclude_self = false);

double dist_n(std::span<const TokenSeq> samples, std::size_t n);

double doc_similarity(std::span<const TokenId> a, std::span<const TokenId> b,
                      const WordVectors& vectors);

}  // namespace tlg
