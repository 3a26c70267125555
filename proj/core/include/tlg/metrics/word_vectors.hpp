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
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tlg/common/types.hpp"

namespace tlg {

struct WordVectorOptions {
  std::size_t dim = 100;
  std::size_t window = 5;
  std::uint64_t seed = 0;
  std::size_t power_iterations = 4;
};

// Rows are token vectors; tokens that never occurred have all-zero rows and
// count as out of vocabulary.
class WordVectors {
 public:
  WordVectors() = default;
  WordVectors(Eigen::MatrixXd vectors, Eigen::MatrixXd contexts, std::size_t window,
              std::vector<std::uint8_t> present);

  std::size_t vocab_size() const { return static_cast<std::size_t>(vectors_.rows()); }
  std::size_t dim() const { return static_cast<std::size_t>(vectors_.cols()); }
  std::size_t window() const { return window_; }
  const std::string& method() const { return method_; }
  bool has(TokenId t) const;

  const Eigen::MatrixXd& vectors() const { return vectors_; }
  // Context-side factor; vectors * contexts^T reproduces the PPMI matrix when
  // dim equals the vocabulary size.
  const Eigen::MatrixXd& contexts() const { return contexts_; }
  Eigen::VectorXd vector(TokenId t) const { return vectors_.row(t).transpose(); }

  void scale(double factor);

  void save(const std::filesystem::path& path) const;
  static WordVectors load(const std::filesystem::path& path);

 private:
  Eigen::MatrixXd vectors_;
  Eigen::MatrixXd contexts_;
  std::size_t window_ = 5;
  std::string method_ = "ppmi-svd";
  std::vector<std::uint8_t> present_;
};

// Symmetric positive PMI over a +-window co-occurrence count. Documents do
// not share windows.
Eigen::MatrixXd ppmi_matrix(std::span<const TokenSeq> documents, std::size_t vocab_size,
                            std::size_t window);

WordVectors train_word_vectors(std::span<const TokenSeq> documents, std::size_t vocab_size,
                               const WordVectorOptions& options = {});

}  // namespace tlg
