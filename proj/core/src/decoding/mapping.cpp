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

#include "tlg/decoding/mapping.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "tlg/common/error.hpp"

namespace tlg {

std::vector<double> softmax(std::span<const double> z) {
  std::vector<double> p(z.size());
  if (z.empty()) return p;
  const double peak = *std::max_element(z.begin(), z.end());
  double total = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    p[i] = std::exp(z[i] - peak);
    total += p[i];
  }
  for (double& v : p) v /= total;
  return p;
}

std::vector<double> sparsemax(std::span<const double> z) {
  std::vector<double> p(z.size(), 0.0);
  if (z.empty()) return p;
  std::vector<double> sorted(z.begin(), z.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double cumsum = 0.0;
  double support_sum = 0.0;
  std::size_t support = 0;
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    cumsum += sorted[k];
    if (1.0 + static_cast<double>(k + 1) * sorted[k] > cumsum) {
      support = k + 1;
      support_sum = cumsum;
    }
  }
  const double tau = (support_sum - 1.0) / static_cast<double>(support);
  for (std::size_t i = 0; i < z.size(); ++i) p[i] = std::max(z[i] - tau, 0.0);
  return p;
}

std::vector<double> entmax(std::span<const double> z, double alpha) {
  if (!(alpha >= 1.0)) throw InvalidArgument("entmax: alpha must be >= 1");
  if (alpha == 1.0) return softmax(z);
  if (alpha == 2.0) return sparsemax(z);
  std::vector<double> p(z.size(), 0.0);
  if (z.empty()) return p;

  const double am1 = alpha - 1.0;
  const double inv = 1.0 / am1;
  std::vector<double> x(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) x[i] = am1 * z[i];
  const double peak = *std::max_element(x.begin(), x.end());

  auto mass = [&](double tau) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double d = x[i] - tau;
      p[i] = d > 0.0 ? std::pow(d, inv) : 0.0;
      s += p[i];
    }
    return s - 1.0;
  };

  // mass(lo) >= 0 >= mass(hi)
  double lo = peak - 1.0;
  double hi = peak - std::pow(1.0 / static_cast<double>(x.size()), am1);
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (mass(mid) >= 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  mass(lo);
  const double total = std::accumulate(p.begin(), p.end(), 0.0);
  for (double& v : p) v /= total;
  return p;
}

double tsallis_entropy(std::span<const double> p, double alpha) {
  double h = 0.0;
  if (alpha == 1.0) {
    for (double v : p) {
      if (v > 0.0) h -= v * std::log(v);
    }
    return h;
  }
  for (double v : p) h += v - std::pow(v, alpha);
  return h / (alpha * (alpha - 1.0));
}

}  // namespace tlg
