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
#include <string>
#include <vector>

#include "tlg/decoding/generate.hpp"
#include "tlg/lm/source.hpp"
#include "tlg/topics/prior.hpp"

namespace tlg {

struct BenchConfig {
  std::string name;
  DecodeConfig decode;
  const TopicPrior* prior = nullptr;  // nullptr = plain decoding
};

struct BenchRow {
  std::size_t length = 0;
  std::string config;
  double tokens_per_sec = 0.0;
  double seconds = 0.0;  // median wall time
};

struct BenchOptions {
  std::size_t runs = 5;
  std::size_t warmup = 1;
};

// Every config runs with the same seed, eos stopping off and distribution
// recording off; runs of different configs are interleaved.
std::vector<BenchRow> bench(const LogitSource& source, const std::vector<BenchConfig>& configs,
                            const std::vector<std::size_t>& lengths, std::span<const TokenId> prompt,
                            const BenchOptions& options = {});

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows);

}  // namespace tlg
