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

#include <vector>

#include "tlg/topics/topic_model.hpp"

namespace tlg {

struct PriorOptions {
  double epsilon = 1e-10;
  // LDA only: use P(t_j | x_i) proportional to phi(j, i) P(t_j) instead of
  // phi(j, i) itself.
  bool bayes_inverted = false;
};

// log P(t_j | x_i) for every token. Kept tokens get log(max(score, eps));
// tokens outside the topic vocabulary get 0 so fusion leaves them alone.
struct TopicPrior {
  std::size_t topic = 0;
  double epsilon = 1e-10;
  std::vector<double> score;    // raw per-token score, 0 outside the topic vocabulary
  std::vector<double> logprob;

  std::size_t size() const { return logprob.size(); }
};

TopicPrior topic_prior(const TopicModel& model, std::size_t topic, const PriorOptions& options = {});

}  // namespace tlg
