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

#include "tlg/metrics/report.hpp"

#include <algorithm>

#include "tlg/common/error.hpp"
#include "tlg/metrics/measures.hpp"

namespace tlg {

nlohmann::json EvalReport::to_json() const {
  return {
      {"coherence", coherence},       {"coherence_samples", coherence_samples},
      {"dist1", dist1},               {"dist2", dist2},
      {"dist3", dist3},               {"tokens_per_second", tokens_per_second},
      {"samples", samples},
  };
}

void EvalReport::write_csv(std::ostream& out) const {
  out << "coherence,coherence_samples,dist1,dist2,dist3,tokens_per_second,samples\n";
  out << coherence << ',' << coherence_samples << ',' << dist1 << ',' << dist2 << ',' << dist3
      << ',' << tokens_per_second << ',' << samples << '\n';
}

EvalReport evaluate_samples(std::span<const TokenSeq> samples, const WordVectors& vectors,
                            bool exclude_self) {
  if (samples.empty()) throw InvalidArgument("evaluation: no samples");
  EvalReport r;
  r.samples = samples.size();
  double total = 0.0;
  for (const auto& s : samples) {
    TokenSeq words;
    for (TokenId t : s) {
      if (vectors.has(t) && std::find(words.begin(), words.end(), t) == words.end()) {
        words.push_back(t);
      }
    }
    if (words.size() < 2) continue;
    total += coherence(words, vectors, exclude_self).value;
    ++r.coherence_samples;
  }
  if (r.coherence_samples > 0) r.coherence = total / static_cast<double>(r.coherence_samples);
  auto dist = [&](std::size_t n) {
    try {
      return dist_n(samples, n);
    } catch (const InvalidArgument&) {
      return 0.0;
    }
  };
  r.dist1 = dist(1);
  r.dist2 = dist(2);
  r.dist3 = dist(3);
  return r;
}

}  // namespace tlg
