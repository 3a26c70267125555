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

#include <filesystem>

#include <Eigen/Dense>

#include "tlg/corpus/corpus.hpp"
#include "tlg/topics/svd.hpp"
#include "tlg/topics/topic_model.hpp"

namespace tlg {

// Truncated SVD of the token-document matrix; columns of U are topics.
class LsiModel final : public TopicModel {
 public:
  LsiModel(Eigen::MatrixXd U, Eigen::VectorXd sigma, std::vector<std::uint8_t> kept_mask);

  static LsiModel load(const std::filesystem::path& path);

  TopicKind kind() const override { return TopicKind::kLsi; }
  std::size_t num_topics() const override { return static_cast<std::size_t>(U_.cols()); }
  std::size_t vocab_size() const override { return static_cast<std::size_t>(U_.rows()); }
  const std::vector<std::uint8_t>& kept_mask() const override { return kept_mask_; }
  std::vector<double> topic_scores(std::size_t topic) const override;
  void save(const std::filesystem::path& path) const override;

  const Eigen::MatrixXd& U() const { return U_; }
  const Eigen::VectorXd& sigma() const { return sigma_; }

 private:
  Eigen::MatrixXd U_;
  Eigen::VectorXd sigma_;
  std::vector<std::uint8_t> kept_mask_;
};

// Rows of X whose kept_mask entry is 0 must be empty; an empty mask keeps
// every row.
LsiModel train_lsi(const TokenDocMatrix& X, std::size_t num_topics, const SvdOptions& options = {},
                   std::vector<std::uint8_t> kept_mask = {});

}  // namespace tlg
