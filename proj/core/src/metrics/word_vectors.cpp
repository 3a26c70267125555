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

#include "tlg/metrics/word_vectors.hpp"

#include <cmath>

#include "tlg/common/blob_io.hpp"
#include "tlg/common/error.hpp"
#include "tlg/topics/svd.hpp"

namespace tlg {

WordVectors::WordVectors(Eigen::MatrixXd vectors, Eigen::MatrixXd contexts, std::size_t window,
                         std::vector<std::uint8_t> present)
    : vectors_(std::move(vectors)),
      contexts_(std::move(contexts)),
      window_(window),
      present_(std::move(present)) {
  if (present_.empty()) present_.assign(static_cast<std::size_t>(vectors_.rows()), 1);
  if (present_.size() != static_cast<std::size_t>(vectors_.rows())) {
    throw InvalidArgument("word vectors: presence mask does not match row count");
  }
  if (vectors_.cols() < 2) throw InvalidArgument("word vectors: dimension must be >= 2");
  if (!vectors_.allFinite()) throw DataError("word vectors contain NaN or inf");
}

bool WordVectors::has(TokenId t) const {
  return t >= 0 && static_cast<std::size_t>(t) < present_.size() &&
         present_[static_cast<std::size_t>(t)] != 0;
}

void WordVectors::scale(double factor) {
  vectors_ *= factor;
}

void WordVectors::save(const std::filesystem::path& path) const {
  const std::int64_t rows = vectors_.rows();
  const std::int64_t cols = vectors_.cols();
  Tensor vec{"vectors", {rows, cols}, {}};
  Tensor ctx{"contexts", {contexts_.rows(), contexts_.cols()}, {}};
  Tensor mask{"present", {rows}, {}};
  vec.data.reserve(static_cast<std::size_t>(rows * cols));
  for (Eigen::Index i = 0; i < vectors_.rows(); ++i) {
    for (Eigen::Index j = 0; j < vectors_.cols(); ++j) {
      vec.data.push_back(static_cast<float>(vectors_(i, j)));
    }
  }
  for (Eigen::Index i = 0; i < contexts_.rows(); ++i) {
    for (Eigen::Index j = 0; j < contexts_.cols(); ++j) {
      ctx.data.push_back(static_cast<float>(contexts_(i, j)));
    }
  }
  for (auto m : present_) mask.data.push_back(m ? 1.0f : 0.0f);
  nlohmann::json header = {{"kind", "word-vectors"}, {"method", method_}, {"window", window_}};
  write_tensor_file(path, header, {vec, ctx, mask});
}

namespace {

Eigen::MatrixXd to_matrix(const Tensor& t) {
  if (t.shape.size() != 2) throw DataError("tensor " + t.name + " is not a matrix");
  const auto r = static_cast<Eigen::Index>(t.shape[0]);
  const auto c = static_cast<Eigen::Index>(t.shape[1]);
  Eigen::MatrixXd m(r, c);
  for (Eigen::Index i = 0; i < r; ++i) {
    for (Eigen::Index j = 0; j < c; ++j) m(i, j) = t.data[static_cast<std::size_t>(i * c + j)];
  }
  return m;
}

}  // namespace

WordVectors WordVectors::load(const std::filesystem::path& path) {
  const TensorFile f = read_tensor_file(path);
  if (f.header.value("kind", "") != "word-vectors") {
    throw DataError(path.string() + " is not a word-vector file");
  }
  std::vector<std::uint8_t> present;
  for (float v : f.get("present").data) present.push_back(v != 0.0f ? 1 : 0);
  return WordVectors(to_matrix(f.get("vectors")), to_matrix(f.get("contexts")),
                     f.header.value("window", std::size_t{5}), std::move(present));
}

Eigen::MatrixXd ppmi_matrix(std::span<const TokenSeq> documents, std::size_t vocab_size,
                            std::size_t window) {
  if (window == 0) throw InvalidArgument("ppmi: window must be >= 1");
  const auto n = static_cast<Eigen::Index>(vocab_size);
  Eigen::MatrixXd counts = Eigen::MatrixXd::Zero(n, n);
  for (const auto& doc : documents) {
    for (std::size_t i = 0; i < doc.size(); ++i) {
      const auto w = doc[i];
      if (w < 0 || static_cast<std::size_t>(w) >= vocab_size) {
        throw InvalidArgument("ppmi: token id " + std::to_string(w) + " out of range");
      }
      const std::size_t hi = std::min(doc.size(), i + window + 1);
      for (std::size_t j = i + 1; j < hi; ++j) {
        counts(w, doc[j]) += 1.0;
        counts(doc[j], w) += 1.0;
      }
    }
  }
  const double total = counts.sum();
  if (total <= 0.0) return counts;
  const Eigen::VectorXd row = counts.rowwise().sum();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double c = counts(i, j);
      if (c <= 0.0) continue;
      out(i, j) = std::max(0.0, std::log(c * total / (row(i) * row(j))));
    }
  }
  return out;
}

WordVectors train_word_vectors(std::span<const TokenSeq> documents, std::size_t vocab_size,
                               const WordVectorOptions& options) {
  if (documents.empty()) throw DataError("word vectors: empty corpus");
  std::vector<std::uint8_t> present(vocab_size, 0);
  for (const auto& doc : documents) {
    for (TokenId t : doc) {
      if (t < 0 || static_cast<std::size_t>(t) >= vocab_size) {
        throw InvalidArgument("word vectors: token id " + std::to_string(t) + " out of range");
      }
      present[static_cast<std::size_t>(t)] = 1;
    }
  }
  // Work on the occurring tokens only.
  std::vector<TokenId> compact_of(vocab_size, -1);
  std::vector<TokenId> full_of;
  for (std::size_t t = 0; t < vocab_size; ++t) {
    if (present[t]) {
      compact_of[t] = static_cast<TokenId>(full_of.size());
      full_of.push_back(static_cast<TokenId>(t));
    }
  }
  if (options.dim > full_of.size()) {
    throw InvalidArgument("word vectors: dimension " + std::to_string(options.dim) +
                          " exceeds vocabulary of " + std::to_string(full_of.size()) + " tokens");
  }
  if (options.dim < 2) throw InvalidArgument("word vectors: dimension must be >= 2");
  std::vector<TokenSeq> compact(documents.size());
  for (std::size_t d = 0; d < documents.size(); ++d) {
    compact[d].reserve(documents[d].size());
    for (TokenId t : documents[d]) compact[d].push_back(compact_of[static_cast<std::size_t>(t)]);
  }
  const Eigen::MatrixXd m = ppmi_matrix(compact, full_of.size(), options.window);
  SvdOptions svd_options;
  svd_options.seed = options.seed;
  svd_options.power_iterations = options.power_iterations;
  const TruncatedSvd svd = randomized_svd(m, options.dim, svd_options);

  const auto dim = static_cast<Eigen::Index>(options.dim);
  Eigen::MatrixXd vectors = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(vocab_size), dim);
  Eigen::MatrixXd contexts = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(vocab_size), dim);
  const Eigen::MatrixXd us = svd.U * svd.sigma.asDiagonal();
  for (std::size_t c = 0; c < full_of.size(); ++c) {
    vectors.row(full_of[c]) = us.row(static_cast<Eigen::Index>(c));
    contexts.row(full_of[c]) = svd.V.row(static_cast<Eigen::Index>(c));
  }
  return WordVectors(std::move(vectors), std::move(contexts), options.window, std::move(present));
}

}  // namespace tlg
