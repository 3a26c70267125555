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

#include "tlg/decoding/fusion.hpp"

#include <cmath>

#include "tlg/common/error.hpp"

namespace tlg {

std::vector<double> fuse_topic(std::span<const double> logits, std::span<const double> logprob,
                               double gamma, double threshold) {
  if (logits.size() != logprob.size()) {
    throw InvalidArgument("fuse_topic: " + std::to_string(logits.size()) + " logits vs " +
                          std::to_string(logprob.size()) + " prior entries");
  }
  if (!(gamma >= 0.0)) throw InvalidArgument("fuse_topic: gamma must be >= 0");
  std::vector<double> u(logits.begin(), logits.end());
  if (gamma == 0.0) return u;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (logits[i] > threshold) u[i] += gamma * logprob[i];
  }
  return u;
}

std::vector<double> fuse_topic(std::span<const double> logits, const TopicPrior& prior,
                               double gamma, double threshold) {
  return fuse_topic(logits, prior.logprob, gamma, threshold);
}

std::vector<double> apply_temperature_repetition(std::span<const double> u, double temperature,
                                                 double penalty, std::span<const TokenId> generated,
                                                 RepetitionMode mode) {
  if (!(temperature > 0.0)) throw InvalidArgument("temperature must be > 0");
  if (!(penalty >= 1.0)) throw InvalidArgument("repetition penalty must be >= 1");
  std::vector<std::uint8_t> seen(u.size(), 0);
  for (TokenId t : generated) {
    if (t >= 0 && static_cast<std::size_t>(t) < u.size()) seen[static_cast<std::size_t>(t)] = 1;
  }
  std::vector<double> out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!seen[i]) {
      out[i] = u[i] / temperature;
    } else if (mode == RepetitionMode::kSignAware && u[i] < 0.0) {
      out[i] = u[i] * penalty / temperature;
    } else {
      out[i] = u[i] / (temperature * penalty);
    }
  }
  return out;
}

}  // namespace tlg
