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
#include <vector>

#include <Eigen/Dense>

#include "tlg/lm/source.hpp"

namespace tlg {

struct TransformerConfig {
  std::size_t vocab_size = 0;
  std::size_t d_model = 0;
  std::size_t n_heads = 1;
  std::size_t n_layers = 1;
  std::size_t d_ff = 0;
  std::size_t max_len = 0;
  double layer_norm_eps = 1e-5;

  std::size_t head_dim() const { return n_heads == 0 ? 0 : d_model / n_heads; }
};

struct TransformerLayer {
  Eigen::VectorXd ln1_gain, ln1_bias;
  std::vector<Eigen::MatrixXd> wq, wk, wv;  // per head, d_model x head_dim
  Eigen::MatrixXd wo;                        // d_model x d_model
  Eigen::VectorXd ln2_gain, ln2_bias;
  Eigen::MatrixXd w1;  // d_model x d_ff
  Eigen::VectorXd b1;
  Eigen::MatrixXd w2;  // d_ff x d_model
  Eigen::VectorXd b2;
};

// Pre-norm decoder stack with tied input/output embeddings. No final layer
// norm is applied before the output projection.
struct TransformerWeights {
  TransformerConfig config;
  Eigen::MatrixXd token_embedding;     // vocab x d_model
  Eigen::MatrixXd position_embedding;  // max_len x d_model
  std::vector<TransformerLayer> layers;

  // Throws InvalidArgument naming the first matrix with a wrong shape.
  void validate() const;

  static TransformerWeights random(const TransformerConfig& config, std::uint64_t seed,
                                   double scale = 0.2);
  // JSON header line + float32 tensors (see blob_io.hpp).
  static TransformerWeights load(const std::filesystem::path& path);
  void save(const std::filesystem::path& path) const;
};

// D^-1 A with A = tril(exp(Q K^T / sqrt(d_k))), computed with a per-row max
// shift.
Eigen::MatrixXd attention_weights(const Eigen::MatrixXd& Q, const Eigen::MatrixXd& K);
Eigen::MatrixXd attention(const Eigen::MatrixXd& Q, const Eigen::MatrixXd& K,
                          const Eigen::MatrixXd& V);

Eigen::MatrixXd layer_norm(const Eigen::MatrixXd& x, const Eigen::VectorXd& gain,
                           const Eigen::VectorXd& bias, double eps);
Eigen::MatrixXd transformer_block(const TransformerLayer& layer, const Eigen::MatrixXd& h,
                                  const TransformerConfig& config);

// Logits for every position: row i scores the token following tokens[0..i].
Eigen::MatrixXd transformer_forward(const TransformerWeights& weights,
                                    std::span<const TokenId> tokens);

class TransformerLm final : public LogitSource {
 public:
  TransformerLm(TransformerWeights weights, TokenId bos, TokenId eos);

  std::string name() const override { return "transformer"; }
  std::size_t vocab_size() const override { return weights_.config.vocab_size; }
  std::size_t max_context() const override { return weights_.config.max_len; }
  TokenId bos_id() const override { return bos_; }
  TokenId eos_id() const override { return eos_; }

  const TransformerWeights& weights() const { return weights_; }

 protected:
  std::vector<double> compute_logits(std::span<const TokenId> context) const override;

 private:
  TransformerWeights weights_;
  TokenId bos_;
  TokenId eos_;
};

}  // namespace tlg
