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

#include "tlg/metrics/measures.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "tlg/common/error.hpp"

namespace tlg {

namespace {

void same_length(std::span<const double> p, std::span<const double> q, const char* what) {
  if (p.size() != q.size()) {
    throw InvalidArgument(std::string(what) + ": distributions of length " +
                          std::to_string(p.size()) + " and " + std::to_string(q.size()));
  }
}

}  // namespace

double entropy(std::span<const double> p) {
  double h = 0.0;
  for (double v : p) {
    if (v > 0.0) h -= v * std::log(v);
  }
  return h;
}

double cross_entropy(std::span<const double> p, std::span<const double> q) {
  same_length(p, q, "cross entropy");
  double h = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) h -= p[i] * std::log(std::max(q[i], kKlFloor));
  }
  return h;
}

double surprise(std::span<const double> p, std::span<const double> q) {
  same_length(p, q, "surprise");
  double kl = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) kl += p[i] * (std::log(p[i]) - std::log(std::max(q[i], kKlFloor)));
  }
  return std::max(kl, 0.0);
}

CoherenceResult coherence(std::span<const TokenId> words, const WordVectors& vectors,
                          bool exclude_self) {
  CoherenceResult r;
  std::vector<Eigen::VectorXd> unit;
  for (TokenId w : words) {
    if (!vectors.has(w)) {
      ++r.dropped;
      continue;
    }
    Eigen::VectorXd v = vectors.vector(w);
    const double norm = v.norm();
    if (norm > 0.0) v /= norm;
    unit.push_back(std::move(v));
  }
  r.used = unit.size();
  if (r.used < 2) {
    throw InvalidArgument("coherence needs at least 2 in-vocabulary words, got " +
                          std::to_string(r.used));
  }
  double total = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < unit.size(); ++i) {
    for (std::size_t j = 0; j < unit.size(); ++j) {
      if (exclude_self && i == j) continue;
      total += unit[i].dot(unit[j]);
      ++pairs;
    }
  }
  r.value = total / static_cast<double>(pairs);
  return r;
}

double dist_n(std::span<const TokenSeq> samples, std::size_t n) {
  if (n < 1 || n > 3) throw InvalidArgument("dist-n: n must be 1, 2 or 3");
  if (samples.empty()) throw InvalidArgument("dist-n: no samples");
  std::set<std::vector<TokenId>> distinct;
  std::size_t total = 0;
  for (const auto& s : samples) {
    if (s.size() < n) continue;
    for (std::size_t i = 0; i + n <= s.size(); ++i) {
      distinct.emplace(s.begin() + static_cast<std::ptrdiff_t>(i),
                       s.begin() + static_cast<std::ptrdiff_t>(i + n));
      ++total;
    }
  }
  if (total == 0) throw InvalidArgument("dist-n: samples contain no " + std::to_string(n) + "-grams");
  return 100.0 * static_cast<double>(distinct.size()) / static_cast<double>(total);
}

namespace {

Eigen::VectorXd mean_embedding(std::span<const TokenId> doc, const WordVectors& vectors) {
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(vectors.dim()));
  std::size_t used = 0;
  for (TokenId t : doc) {
    if (!vectors.has(t)) continue;
    sum += vectors.vector(t);
    ++used;
  }
  if (used == 0) throw InvalidArgument("doc similarity: document has no in-vocabulary token");
  return sum / static_cast<double>(used);
}

}  // namespace

double doc_similarity(std::span<const TokenId> a, std::span<const TokenId> b,
                      const WordVectors& vectors) {
  const Eigen::VectorXd ma = mean_embedding(a, vectors);
  const Eigen::VectorXd mb = mean_embedding(b, vectors);
  const double denom = ma.norm() * mb.norm();
  if (denom == 0.0) return 0.0;
  return std::clamp(ma.dot(mb) / denom, -1.0, 1.0);
}

}  // namespace tlg
