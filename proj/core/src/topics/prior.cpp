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

#include "tlg/topics/prior.hpp"

#include <algorithm>
#include <cmath>

#include "tlg/common/error.hpp"
#include "tlg/topics/lda.hpp"

namespace tlg {

TopicPrior topic_prior(const TopicModel& model, std::size_t topic, const PriorOptions& options) {
  if (topic >= model.num_topics()) {
    throw InvalidArgument("topic " + std::to_string(topic) + " out of range [0, " +
                          std::to_string(model.num_topics()) + ")");
  }
  if (!(options.epsilon > 0.0)) throw InvalidArgument("topic_prior: epsilon must be positive");

  TopicPrior prior;
  prior.topic = topic;
  prior.epsilon = options.epsilon;
  prior.score = model.topic_scores(topic);

  if (options.bayes_inverted) {
    const auto* lda = dynamic_cast<const LdaModel*>(&model);
    if (lda == nullptr) throw InvalidArgument("topic_prior: Bayes-inverted mode needs an LDA model");
    const auto& phi = lda->phi();
    const auto& weight = lda->topic_weight();
    for (std::size_t i = 0; i < prior.score.size(); ++i) {
      const auto col = static_cast<Eigen::Index>(i);
      const double evidence = phi.col(col).dot(weight);
      prior.score[i] = evidence > 0.0
                           ? phi(static_cast<Eigen::Index>(topic), col) *
                                 weight(static_cast<Eigen::Index>(topic)) / evidence
                           : 0.0;
    }
  }

  const auto& mask = model.kept_mask();
  prior.logprob.assign(prior.score.size(), 0.0);
  for (std::size_t i = 0; i < prior.score.size(); ++i) {
    if (!mask[i]) {
      prior.score[i] = 0.0;
      continue;
    }
    prior.logprob[i] = std::log(std::max(prior.score[i], options.epsilon));
  }
  return prior;
}

}  // namespace tlg
