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

#include "tlg/metrics/bench.hpp"

#include <algorithm>
#include <chrono>

namespace tlg {

std::vector<BenchRow> bench(const LogitSource& source, const std::vector<BenchConfig>& configs,
                            const std::vector<std::size_t>& lengths, std::span<const TokenId> prompt,
                            const BenchOptions& options) {
  using Clock = std::chrono::steady_clock;
  const std::size_t runs = std::max<std::size_t>(options.runs, 1);
  std::vector<BenchRow> rows;
  for (std::size_t length : lengths) {
    std::vector<DecodeConfig> decode;
    for (const auto& c : configs) {
      DecodeConfig d = c.decode;
      d.max_tokens = length;
      d.stop_at_eos = false;
      d.record_distributions = false;
      decode.push_back(d);
    }
    for (std::size_t w = 0; w < options.warmup; ++w) {
      for (std::size_t c = 0; c < configs.size(); ++c) generate(source, configs[c].prior, decode[c], prompt);
    }
    std::vector<std::vector<double>> times(configs.size());
    for (std::size_t r = 0; r < runs; ++r) {
      for (std::size_t c = 0; c < configs.size(); ++c) {
        const auto t0 = Clock::now();
        const auto trace = generate(source, configs[c].prior, decode[c], prompt);
        const auto t1 = Clock::now();
        (void)trace;
        times[c].push_back(std::chrono::duration<double>(t1 - t0).count());
      }
    }
    for (std::size_t c = 0; c < configs.size(); ++c) {
      auto& t = times[c];
      std::sort(t.begin(), t.end());
      const double median = t.size() % 2 ? t[t.size() / 2] : 0.5 * (t[t.size() / 2 - 1] + t[t.size() / 2]);
      rows.push_back({length, configs[c].name,
                      median > 0.0 ? static_cast<double>(length) / median : 0.0, median});
    }
  }
  return rows;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << "length,config,tokens_per_sec\n";
  for (const auto& r : rows) out << r.length << ',' << r.config << ',' << r.tokens_per_sec << '\n';
}

}  // namespace tlg
