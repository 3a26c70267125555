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

#include "tlg/common/rng.hpp"
#include "tlg/common/types.hpp"

namespace tlg {

// Token ids ordered by probability, highest first; ties by ascending id.
std::vector<TokenId> rank_by_probability(std::span<const double> p);

// Keeps the smallest probability-ranked prefix whose mass reaches top_p and
// renormalizes. Zero-probability tokens are never kept. top_p = 1 returns p.
std::vector<double> nucleus_filter(std::span<const double> p, double top_p);

// Keeps the k most probable tokens (ties by id) and renormalizes; k = 0
// disables the filter.
std::vector<double> top_k_filter(std::span<const double> p, std::size_t k);

TokenId sample_token(std::span<const double> p, CounterRng& rng);
TokenId greedy_token(std::span<const double> p);

}  // namespace tlg
