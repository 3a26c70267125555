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

#include "tlg/decoding/sampling.hpp"

#include <algorithm>
#include <numeric>

#include "tlg/common/error.hpp"

namespace tlg {

std::vector<TokenId> rank_by_probability(std::span<const double> p) {
  std::vector<TokenId> order(p.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](TokenId a, TokenId b) {
    return p[static_cast<std::size_t>(a)] > p[static_cast<std::size_t>(b)];
  });
  return order;
}

namespace {

std::vector<double> keep_prefix(std::span<const double> p, const std::vector<TokenId>& order,
                                std::size_t count) {
  std::vector<double> out(p.size(), 0.0);
  double kept = 0.0;
  for (std::size_t r = 0; r < count; ++r) kept += p[static_cast<std::size_t>(order[r])];
  for (std::size_t r = 0; r < count; ++r) {
    const auto i = static_cast<std::size_t>(order[r]);
    out[i] = p[i] / kept;
  }
  return out;
}

}  // namespace

std::vector<double> nucleus_filter(std::span<const double> p, double top_p) {
  if (!(top_p > 0.0 && top_p <= 1.0)) throw InvalidArgument("nucleus: top_p must lie in (0, 1]");
  if (top_p == 1.0) return {p.begin(), p.end()};
  const auto order = rank_by_probability(p);
  double acc = 0.0;
  std::size_t count = 0;
  for (TokenId id : order) {
    const double v = p[static_cast<std::size_t>(id)];
    if (v <= 0.0) break;
    acc += v;
    ++count;
    if (acc >= top_p) break;
  }
  return keep_prefix(p, order, count);
}

std::vector<double> top_k_filter(std::span<const double> p, std::size_t k) {
  if (k == 0 || k >= p.size()) return {p.begin(), p.end()};
  const auto order = rank_by_probability(p);
  std::size_t count = 0;
  while (count < k && p[static_cast<std::size_t>(order[count])] > 0.0) ++count;
  return keep_prefix(p, order, count);
}

TokenId sample_token(std::span<const double> p, CounterRng& rng) {
  return static_cast<TokenId>(rng.categorical(p));
}

TokenId greedy_token(std::span<const double> p) {
  if (p.empty()) throw InvalidArgument("greedy_token: empty distribution");
  return static_cast<TokenId>(std::max_element(p.begin(), p.end()) - p.begin());
}

}  // namespace tlg
