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
#include "tlg/topics/prior.hpp"

namespace tlg {

// u_i = S_i + gamma * logprob(i), where logprob(i) is the prior's log
// P(t_j | x_i) when S_i > threshold and 0 otherwise. threshold = -inf
// applies the prior everywhere; gamma = 0 returns S unchanged.
std::vector<double> fuse_topic(std::span<const double> logits, std::span<const double> logprob,
                               double gamma, double threshold = kNegInf);
std::vector<double> fuse_topic(std::span<const double> logits, const TopicPrior& prior,
                               double gamma, double threshold = kNegInf);

enum class RepetitionMode {
  kDivide,     // u / (T * r) for generated tokens, whatever the sign
  kSignAware,  // negative logits of generated tokens are multiplied by r
};

// out_i = u_i / (T * R(i)), R(i) = r for tokens already generated, else 1.
std::vector<double> apply_temperature_repetition(std::span<const double> u, double temperature,
                                                 double penalty, std::span<const TokenId> generated,
                                                 RepetitionMode mode = RepetitionMode::kDivide);

}  // namespace tlg
