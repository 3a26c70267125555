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

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tlg/common/types.hpp"
#include "tlg/decoding/fusion.hpp"
#include "tlg/lm/source.hpp"
#include "tlg/topics/prior.hpp"
#include "tlg/topics/topic_model.hpp"

namespace tlg {

class Tokenizer;

struct DecodeConfig {
  double gamma = 1.0;
  double threshold = kNegInf;
  double alpha = 1.0;  // 1 softmax, 2 sparsemax, otherwise entmax
  double temperature = 1.0;
  double repetition_penalty = 1.2;
  RepetitionMode repetition_mode = RepetitionMode::kDivide;
  double top_p = 0.9;
  std::size_t top_k = 0;  // 0 = off
  std::size_t max_tokens = 60;
  std::uint64_t seed = 0;
  bool stop_at_eos = true;
  // Fill entropy / surprise / top-5 columns of the trace.
  bool record_distributions = true;
  // Document simulation only: add gamma * phi instead of gamma * log phi.
  bool literal_phi = false;

  void validate() const;
  nlohmann::json to_json() const;
  static DecodeConfig from_json(const nlohmann::json& j);
};

struct Candidate {
  TokenId id = 0;
  double prob = 0.0;
};

struct TraceStep {
  std::size_t step = 0;
  TokenId token = 0;
  std::string text;
  double base_entropy = 0.0;
  double fused_entropy = 0.0;
  double surprise = 0.0;
  double topic_logprob = 0.0;
  double topic_score = 0.0;  // raw prior score of the chosen token
  std::optional<std::size_t> topic;  // per-step draw in document simulation
  std::vector<Candidate> top;
};

struct GenerationTrace {
  DecodeConfig config;
  std::string source;
  std::optional<std::size_t> topic;
  TokenSeq prompt;
  TokenSeq tokens;  // generated only; equals the step tokens in order
  std::vector<TraceStep> steps;
  bool stopped_at_eos = false;
  std::optional<std::string> error;  // set when the source failed mid-stream
};

// Per step: logits -> fuse_topic -> temperature/repetition -> output mapping
// -> top-k / nucleus -> sample. prior == nullptr decodes the base LM.
// tokenizer, when given, fills TraceStep::text.
GenerationTrace generate(const LogitSource& source, const TopicPrior* prior,
                         const DecodeConfig& config, std::span<const TokenId> prompt,
                         const Tokenizer* tokenizer = nullptr);

// Each step draws z ~ Cat(theta) from its own random stream and fuses with
// topic z's prior; otherwise identical to generate.
GenerationTrace simulate_document(const LogitSource& source, const TopicModel& topics,
                                  std::span<const double> theta, const DecodeConfig& config,
                                  std::span<const TokenId> prompt, std::size_t length,
                                  const PriorOptions& prior_options = {},
                                  const Tokenizer* tokenizer = nullptr);

}  // namespace tlg
