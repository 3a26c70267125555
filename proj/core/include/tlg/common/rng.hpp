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
#include <span>

namespace tlg {

// Counter-based generator: the n-th draw of stream s under seed k is a pure
// function of (k, s, n), so replays are exact on every platform.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : seed_(seed), stream_(stream) {}

  std::uint64_t next_u64();

  // Uniform in [0, 1) with 53 random bits.
  double uniform();

  // Standard normal via Box-Muller; consumes two draws.
  double normal();

  // log of a Gamma(shape, 1) draw (Marsaglia-Tsang); stays finite for tiny
  // shapes where the draw itself underflows.
  double log_gamma_variate(double shape);

  // Draws index i with probability weights[i] / sum(weights). Zero-weight
  // entries are never returned.
  std::size_t categorical(std::span<const double> weights);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }
  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace tlg
