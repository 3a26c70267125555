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

#include "tlg/decoding/generate.hpp"

#include <cmath>
#include <functional>
#include <limits>

#include "tlg/common/error.hpp"
#include "tlg/common/rng.hpp"
#include "tlg/corpus/tokenizer.hpp"
#include "tlg/decoding/mapping.hpp"
#include "tlg/decoding/sampling.hpp"
#include "tlg/metrics/measures.hpp"

namespace tlg {

void DecodeConfig::validate() const {
  if (!(gamma >= 0.0) || std::isinf(gamma)) throw InvalidArgument("gamma must be finite and >= 0");
  if (std::isnan(threshold)) throw InvalidArgument("threshold is NaN");
  if (!(alpha >= 1.0) || std::isinf(alpha)) throw InvalidArgument("alpha must be >= 1");
  if (!(temperature > 0.0) || std::isinf(temperature)) throw InvalidArgument("temperature must be > 0");
  if (!(repetition_penalty >= 1.0) || std::isinf(repetition_penalty)) {
    throw InvalidArgument("repetition penalty must be >= 1");
  }
  if (!(top_p > 0.0 && top_p <= 1.0)) throw InvalidArgument("top_p must lie in (0, 1]");
}

namespace {

nlohmann::json number_or_inf(double v) {
  if (std::isinf(v)) return v < 0 ? "-inf" : "inf";
  return v;
}

double read_number(const nlohmann::json& v) {
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    throw InvalidArgument("not a number: " + s);
  }
  if (v.is_null()) return -std::numeric_limits<double>::infinity();
  return v.get<double>();
}

}  // namespace

nlohmann::json DecodeConfig::to_json() const {
  return {
      {"gamma", gamma},
      {"threshold", number_or_inf(threshold)},
      {"alpha", alpha},
      {"temperature", temperature},
      {"repetition_penalty", repetition_penalty},
      {"repetition_mode", repetition_mode == RepetitionMode::kDivide ? "divide" : "sign-aware"},
      {"top_p", top_p},
      {"top_k", top_k},
      {"max_tokens", max_tokens},
      {"seed", seed},
      {"stop_at_eos", stop_at_eos},
      {"record_distributions", record_distributions},
      {"literal_phi", literal_phi},
  };
}

DecodeConfig DecodeConfig::from_json(const nlohmann::json& j) {
  DecodeConfig c;
  try {
    if (j.contains("gamma")) c.gamma = j.at("gamma").get<double>();
    if (j.contains("threshold")) c.threshold = read_number(j.at("threshold"));
    if (j.contains("alpha")) c.alpha = j.at("alpha").get<double>();
    if (j.contains("temperature")) c.temperature = j.at("temperature").get<double>();
    if (j.contains("repetition_penalty")) c.repetition_penalty = j.at("repetition_penalty").get<double>();
    if (j.contains("repetition_mode")) {
      const auto m = j.at("repetition_mode").get<std::string>();
      if (m == "divide") {
        c.repetition_mode = RepetitionMode::kDivide;
      } else if (m == "sign-aware") {
        c.repetition_mode = RepetitionMode::kSignAware;
      } else {
        throw InvalidArgument("unknown repetition_mode: " + m);
      }
    }
    if (j.contains("top_p")) c.top_p = j.at("top_p").get<double>();
    if (j.contains("top_k")) c.top_k = j.at("top_k").get<std::size_t>();
    if (j.contains("max_tokens")) c.max_tokens = j.at("max_tokens").get<std::size_t>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("stop_at_eos")) c.stop_at_eos = j.at("stop_at_eos").get<bool>();
    if (j.contains("record_distributions")) c.record_distributions = j.at("record_distributions").get<bool>();
    if (j.contains("literal_phi")) c.literal_phi = j.at("literal_phi").get<bool>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("decode config: ") + e.what());
  }
  c.validate();
  return c;
}

namespace {

struct StepPrior {
  const TopicPrior* prior = nullptr;
  std::optional<std::size_t> topic;
};

using PriorPicker = std::function<StepPrior()>;

std::vector<double> fused_scores(std::span<const double> s, const TopicPrior& prior,
                                 const DecodeConfig& config) {
  if (config.literal_phi) return fuse_topic(s, prior.score, config.gamma, config.threshold);
  return fuse_topic(s, prior.logprob, config.gamma, config.threshold);
}

GenerationTrace decode(const LogitSource& source, const DecodeConfig& config,
                       std::span<const TokenId> prompt, std::size_t length,
                       const PriorPicker& pick, const Tokenizer* tokenizer) {
  config.validate();
  GenerationTrace trace;
  trace.config = config;
  trace.source = source.name();
  trace.prompt.assign(prompt.begin(), prompt.end());

  CounterRng rng(config.seed, 0);
  TokenSeq context(prompt.begin(), prompt.end());
  context.reserve(prompt.size() + length);

  for (std::size_t step = 0; step < length; ++step) {
    const StepPrior sp = pick();
    LogitVector logits;
    try {
      logits = source.logits(context);
    } catch (const Error& e) {
      // keep what was produced so far
      trace.error = e.what();
      break;
    }
    const auto& s = logits.scores;
    if (sp.prior && sp.prior->size() != s.size()) {
      throw InvalidArgument("topic prior covers " + std::to_string(sp.prior->size()) +
                            " tokens, source has " + std::to_string(s.size()));
    }

    std::vector<double> u = sp.prior ? fused_scores(s, *sp.prior, config)
                                     : std::vector<double>(s.begin(), s.end());
    u = apply_temperature_repetition(u, config.temperature, config.repetition_penalty,
                                     trace.tokens, config.repetition_mode);
    const std::vector<double> p = entmax(u, config.alpha);

    std::vector<double> q = top_k_filter(p, config.top_k);
    q = nucleus_filter(q, config.top_p);
    const TokenId token = sample_token(q, rng);

    TraceStep row;
    row.step = step;
    row.token = token;
    row.topic = sp.topic;
    if (tokenizer) row.text = tokenizer->token(token);
    if (sp.prior) {
      row.topic_logprob = sp.prior->logprob[static_cast<std::size_t>(token)];
      row.topic_score = sp.prior->score[static_cast<std::size_t>(token)];
    }
    if (config.record_distributions) {
      std::vector<double> base = p;
      if (sp.prior) {
        base = entmax(apply_temperature_repetition(s, config.temperature, config.repetition_penalty,
                                                   trace.tokens, config.repetition_mode),
                      config.alpha);
      }
      row.base_entropy = entropy(base);
      row.fused_entropy = entropy(p);
      row.surprise = surprise(p, base);
      const auto order = rank_by_probability(q);
      for (std::size_t r = 0; r < order.size() && r < 5; ++r) {
        const double prob = q[static_cast<std::size_t>(order[r])];
        if (prob <= 0.0) break;
        row.top.push_back({order[r], prob});
      }
    }
    trace.steps.push_back(std::move(row));
    trace.tokens.push_back(token);
    context.push_back(token);
    if (config.stop_at_eos && token == source.eos_id()) {
      trace.stopped_at_eos = true;
      break;
    }
  }
  return trace;
}

}  // namespace

GenerationTrace generate(const LogitSource& source, const TopicPrior* prior,
                         const DecodeConfig& config, std::span<const TokenId> prompt,
                         const Tokenizer* tokenizer) {
  auto trace = decode(
      source, config, prompt, config.max_tokens,
      [prior] { return StepPrior{prior, std::nullopt}; }, tokenizer);
  if (prior) trace.topic = prior->topic;
  return trace;
}

GenerationTrace simulate_document(const LogitSource& source, const TopicModel& topics,
                                  std::span<const double> theta, const DecodeConfig& config,
                                  std::span<const TokenId> prompt, std::size_t length,
                                  const PriorOptions& prior_options, const Tokenizer* tokenizer) {
  if (theta.size() != topics.num_topics()) {
    throw InvalidArgument("theta has " + std::to_string(theta.size()) + " entries, model has " +
                          std::to_string(topics.num_topics()) + " topics");
  }
  double total = 0.0;
  for (double v : theta) {
    if (!(v >= 0.0)) throw InvalidArgument("theta has a negative or NaN entry");
    total += v;
  }
  if (std::abs(total - 1.0) > 1e-6) throw InvalidArgument("theta does not sum to 1");
  if (length == 0) throw InvalidArgument("document length must be > 0");

  std::vector<TopicPrior> priors;
  priors.reserve(theta.size());
  for (std::size_t j = 0; j < theta.size(); ++j) {
    priors.push_back(theta[j] > 0.0 ? topic_prior(topics, j, prior_options) : TopicPrior{});
  }
  // Topic draws use their own stream so a one-hot theta leaves the token
  // stream untouched.
  CounterRng topic_rng(config.seed, 1);
  return decode(
      source, config, prompt, length,
      [&] {
        const std::size_t z = topic_rng.categorical(theta);
        return StepPrior{&priors[z], z};
      },
      tokenizer);
}

}  // namespace tlg
