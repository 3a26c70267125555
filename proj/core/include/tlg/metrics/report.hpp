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

#include <ostream>
#include <span>

#include <nlohmann/json.hpp>

#include "tlg/common/types.hpp"
#include "tlg/metrics/word_vectors.hpp"

namespace tlg {

struct EvalReport {
  double coherence = 0.0;  // mean over samples with >= 2 in-vocab tokens
  std::size_t coherence_samples = 0;
  double dist1 = 0.0;
  double dist2 = 0.0;
  double dist3 = 0.0;
  double tokens_per_second = 0.0;  // 0 when not measured
  std::size_t samples = 0;

  nlohmann::json to_json() const;
  void write_csv(std::ostream& out) const;
};

// Coherence is taken over the distinct in-vocabulary tokens of each sample.
EvalReport evaluate_samples(std::span<const TokenSeq> samples, const WordVectors& vectors,
                            bool exclude_self = false);

}  // namespace tlg
