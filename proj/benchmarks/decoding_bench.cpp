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

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "tlg/decoding/fusion.hpp"
#include "tlg/decoding/generate.hpp"
#include "tlg/decoding/mapping.hpp"
#include "tlg/decoding/sampling.hpp"
#include "tlg/lm/source.hpp"
#include "tlg/topics/prior.hpp"

namespace {

std::vector<double> random_logits(std::size_t n, std::uint32_t seed) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> dist(0.0, 3.0);
  std::vector<double> v(n);
  for (auto& x : v) x = dist(gen);
  return v;
}

tlg::TopicPrior random_prior(std::size_t n) {
  tlg::TopicPrior prior;
  prior.score.resize(n);
  prior.logprob.resize(n);
  std::mt19937 gen(7);
  std::uniform_real_distribution<double> u(1e-6, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    // one token in four carries topic mass; the rest are neutral
    prior.score[i] = i % 4 == 0 ? u(gen) : 0.0;
    prior.logprob[i] = i % 4 == 0 ? std::log(prior.score[i]) : 0.0;
  }
  return prior;
}

// Logits depend on the last token only, so the cost is the decoding pipeline.
class TableSource final : public tlg::LogitSource {
 public:
  explicit TableSource(std::size_t vocab) : vocab_(vocab), rows_(16) {
    for (std::size_t r = 0; r < rows_.size(); ++r) rows_[r] = random_logits(vocab, 100 + r);
  }
  std::string name() const override { return "table"; }
  std::size_t vocab_size() const override { return vocab_; }
  std::size_t max_context() const override { return 0; }
  tlg::TokenId bos_id() const override { return 0; }
  tlg::TokenId eos_id() const override { return 1; }

 protected:
  std::vector<double> compute_logits(std::span<const tlg::TokenId> context) const override {
    const auto last = context.empty() ? 0 : static_cast<std::size_t>(context.back());
    return rows_[last % rows_.size()];
  }

 private:
  std::size_t vocab_;
  std::vector<std::vector<double>> rows_;
};

void BM_FuseTopic(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto logits = random_logits(n, 1);
  const auto prior = random_prior(n);
  for (auto _ : state) benchmark::DoNotOptimize(tlg::fuse_topic(logits, prior, 5.0));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_Softmax(benchmark::State& state) {
  const auto z = random_logits(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(tlg::softmax(z));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_Sparsemax(benchmark::State& state) {
  const auto z = random_logits(static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(tlg::sparsemax(z));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_Entmax15(benchmark::State& state) {
  const auto z = random_logits(static_cast<std::size_t>(state.range(0)), 4);
  for (auto _ : state) benchmark::DoNotOptimize(tlg::entmax(z, 1.5));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_Nucleus(benchmark::State& state) {
  const auto p = tlg::softmax(random_logits(static_cast<std::size_t>(state.range(0)), 5));
  for (auto _ : state) benchmark::DoNotOptimize(tlg::nucleus_filter(p, 0.9));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

// Tokens per second of whole-sequence decoding; range(1) = 1 adds the prior.
void BM_Generate(benchmark::State& state) {
  const auto vocab = static_cast<std::size_t>(state.range(0));
  const TableSource source(vocab);
  const auto prior = random_prior(vocab);
  tlg::DecodeConfig config;
  config.gamma = state.range(1) ? 5.0 : 0.0;
  config.max_tokens = 50;
  config.stop_at_eos = false;
  config.record_distributions = false;
  const std::vector<tlg::TokenId> prompt{2, 3};
  for (auto _ : state) {
    benchmark::DoNotOptimize(tlg::generate(source, state.range(1) ? &prior : nullptr, config, prompt));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(config.max_tokens));
}

}  // namespace

BENCHMARK(BM_FuseTopic)->Arg(1000)->Arg(50000);
BENCHMARK(BM_Softmax)->Arg(1000)->Arg(50000);
BENCHMARK(BM_Sparsemax)->Arg(1000)->Arg(50000);
BENCHMARK(BM_Entmax15)->Arg(1000)->Arg(50000);
BENCHMARK(BM_Nucleus)->Arg(1000)->Arg(50000);
BENCHMARK(BM_Generate)->Args({1000, 0})->Args({1000, 1})->Args({50000, 0})->Args({50000, 1});

BENCHMARK_MAIN();
