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

#include "tlg/lm/transformer.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "tlg/common/blob_io.hpp"
#include "tlg/common/error.hpp"
#include "tlg/common/rng.hpp"

namespace tlg {

namespace {

void expect_shape(const Eigen::MatrixXd& m, std::size_t rows, std::size_t cols,
                  const std::string& name) {
  if (static_cast<std::size_t>(m.rows()) != rows || static_cast<std::size_t>(m.cols()) != cols) {
    throw InvalidArgument("transformer: " + name + " is " + std::to_string(m.rows()) + "x" +
                          std::to_string(m.cols()) + ", expected " + std::to_string(rows) + "x" +
                          std::to_string(cols));
  }
}

void expect_size(const Eigen::VectorXd& v, std::size_t n, const std::string& name) {
  if (static_cast<std::size_t>(v.size()) != n) {
    throw InvalidArgument("transformer: " + name + " has length " + std::to_string(v.size()) +
                          ", expected " + std::to_string(n));
  }
}

double gelu(double x) {
  constexpr double kC = 0.7978845608028654;  // sqrt(2 / pi)
  return 0.5 * x * (1.0 + std::tanh(kC * (x + 0.044715 * x * x * x)));
}

}  // namespace

void TransformerWeights::validate() const {
  const auto& c = config;
  if (c.vocab_size == 0 || c.d_model == 0 || c.n_heads == 0 || c.max_len == 0) {
    throw InvalidArgument("transformer: config dimensions must be positive");
  }
  if (c.d_model % c.n_heads != 0) {
    throw InvalidArgument("transformer: d_model must be divisible by n_heads");
  }
  if (layers.size() != c.n_layers) {
    throw InvalidArgument("transformer: expected " + std::to_string(c.n_layers) + " layers, got " +
                          std::to_string(layers.size()));
  }
  expect_shape(token_embedding, c.vocab_size, c.d_model, "W_e");
  expect_shape(position_embedding, c.max_len, c.d_model, "W_p");
  const std::size_t dk = c.head_dim();
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const auto& L = layers[l];
    const std::string p = "layer" + std::to_string(l) + ".";
    expect_size(L.ln1_gain, c.d_model, p + "ln1_gain");
    expect_size(L.ln1_bias, c.d_model, p + "ln1_bias");
    expect_size(L.ln2_gain, c.d_model, p + "ln2_gain");
    expect_size(L.ln2_bias, c.d_model, p + "ln2_bias");
    if (L.wq.size() != c.n_heads || L.wk.size() != c.n_heads || L.wv.size() != c.n_heads) {
      throw InvalidArgument("transformer: " + p + "attention needs one W_Q/W_K/W_V per head");
    }
    for (std::size_t h = 0; h < c.n_heads; ++h) {
      const std::string hs = std::to_string(h);
      expect_shape(L.wq[h], c.d_model, dk, p + "W_Q" + hs);
      expect_shape(L.wk[h], c.d_model, dk, p + "W_K" + hs);
      expect_shape(L.wv[h], c.d_model, dk, p + "W_V" + hs);
    }
    expect_shape(L.wo, c.d_model, c.d_model, p + "W_0");
    expect_shape(L.w1, c.d_model, c.d_ff, p + "ff_w1");
    expect_size(L.b1, c.d_ff, p + "ff_b1");
    expect_shape(L.w2, c.d_ff, c.d_model, p + "ff_w2");
    expect_size(L.b2, c.d_model, p + "ff_b2");
  }
}

TransformerWeights TransformerWeights::random(const TransformerConfig& config, std::uint64_t seed,
                                              double scale) {
  CounterRng rng(seed, 7);
  auto mat = [&](std::size_t r, std::size_t c) {
    Eigen::MatrixXd m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = scale * rng.normal();
    }
    return m;
  };
  auto vec = [&](std::size_t n, double base) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = base + 0.1 * scale * rng.normal();
    return v;
  };
  TransformerWeights w;
  w.config = config;
  w.token_embedding = mat(config.vocab_size, config.d_model);
  w.position_embedding = mat(config.max_len, config.d_model);
  const std::size_t dk = config.head_dim();
  for (std::size_t l = 0; l < config.n_layers; ++l) {
    TransformerLayer L;
    L.ln1_gain = vec(config.d_model, 1.0);
    L.ln1_bias = vec(config.d_model, 0.0);
    for (std::size_t h = 0; h < config.n_heads; ++h) {
      L.wq.push_back(mat(config.d_model, dk));
      L.wk.push_back(mat(config.d_model, dk));
      L.wv.push_back(mat(config.d_model, dk));
    }
    L.wo = mat(config.d_model, config.d_model);
    L.ln2_gain = vec(config.d_model, 1.0);
    L.ln2_bias = vec(config.d_model, 0.0);
    L.w1 = mat(config.d_model, config.d_ff);
    L.b1 = vec(config.d_ff, 0.0);
    L.w2 = mat(config.d_ff, config.d_model);
    L.b2 = vec(config.d_model, 0.0);
    w.layers.push_back(std::move(L));
  }
  w.validate();
  return w;
}

Eigen::MatrixXd attention_weights(const Eigen::MatrixXd& Q, const Eigen::MatrixXd& K) {
  if (Q.rows() != K.rows() || Q.cols() != K.cols()) {
    throw InvalidArgument("attention: Q and K must have the same shape");
  }
  const Eigen::Index L = Q.rows();
  const double scale = 1.0 / std::sqrt(static_cast<double>(Q.cols()));
  Eigen::MatrixXd A = (Q * K.transpose()) * scale;
  for (Eigen::Index i = 0; i < L; ++i) {
    double peak = A(i, 0);
    for (Eigen::Index j = 1; j <= i; ++j) peak = std::max(peak, A(i, j));
    double row = 0.0;
    for (Eigen::Index j = 0; j < L; ++j) {
      A(i, j) = j <= i ? std::exp(A(i, j) - peak) : 0.0;
      row += A(i, j);
    }
    if (!std::isfinite(row) || row <= 0.0) {
      throw DataError("attention: non-finite normalizer in row " + std::to_string(i));
    }
    A.row(i) /= row;
  }
  return A;
}

Eigen::MatrixXd attention(const Eigen::MatrixXd& Q, const Eigen::MatrixXd& K,
                          const Eigen::MatrixXd& V) {
  if (V.rows() != Q.rows()) throw InvalidArgument("attention: V must have one row per position");
  return attention_weights(Q, K) * V;
}

Eigen::MatrixXd layer_norm(const Eigen::MatrixXd& x, const Eigen::VectorXd& gain,
                           const Eigen::VectorXd& bias, double eps) {
  Eigen::MatrixXd out(x.rows(), x.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    const double mean = x.row(i).mean();
    const double var = (x.row(i).array() - mean).square().mean();
    const double inv = 1.0 / std::sqrt(var + eps);
    out.row(i) = ((x.row(i).array() - mean) * inv * gain.transpose().array() +
                  bias.transpose().array())
                     .matrix();
  }
  return out;
}

Eigen::MatrixXd transformer_block(const TransformerLayer& layer, const Eigen::MatrixXd& h,
                                  const TransformerConfig& config) {
  const Eigen::MatrixXd hn = layer_norm(h, layer.ln1_gain, layer.ln1_bias, config.layer_norm_eps);
  const auto dk = static_cast<Eigen::Index>(config.head_dim());
  Eigen::MatrixXd heads(h.rows(), static_cast<Eigen::Index>(config.d_model));
  for (std::size_t i = 0; i < config.n_heads; ++i) {
    heads.middleCols(static_cast<Eigen::Index>(i) * dk, dk) =
        attention(hn * layer.wq[i], hn * layer.wk[i], hn * layer.wv[i]);
  }
  const Eigen::MatrixXd H = heads * layer.wo + h;
  const Eigen::MatrixXd Hn = layer_norm(H, layer.ln2_gain, layer.ln2_bias, config.layer_norm_eps);
  Eigen::MatrixXd inner = (Hn * layer.w1).rowwise() + layer.b1.transpose();
  inner = inner.unaryExpr([](double v) { return gelu(v); });
  return (inner * layer.w2).rowwise() + layer.b2.transpose() + H;
}

Eigen::MatrixXd transformer_forward(const TransformerWeights& weights,
                                    std::span<const TokenId> tokens) {
  const auto& c = weights.config;
  if (tokens.empty()) throw InvalidArgument("transformer: empty token sequence");
  if (tokens.size() > c.max_len) {
    throw InvalidArgument("transformer: " + std::to_string(tokens.size()) +
                          " tokens exceed max_len " + std::to_string(c.max_len));
  }
  const auto L = static_cast<Eigen::Index>(tokens.size());
  Eigen::MatrixXd h(L, static_cast<Eigen::Index>(c.d_model));
  for (Eigen::Index i = 0; i < L; ++i) {
    const TokenId t = tokens[static_cast<std::size_t>(i)];
    if (t < 0 || static_cast<std::size_t>(t) >= c.vocab_size) {
      throw InvalidArgument("transformer: token " + std::to_string(t) + " outside vocabulary");
    }
    h.row(i) = weights.token_embedding.row(t) + weights.position_embedding.row(i);
  }
  for (const auto& layer : weights.layers) h = transformer_block(layer, h, c);
  return h * weights.token_embedding.transpose();
}

TransformerLm::TransformerLm(TransformerWeights weights, TokenId bos, TokenId eos)
    : weights_(std::move(weights)), bos_(bos), eos_(eos) {
  weights_.validate();
}

std::vector<double> TransformerLm::compute_logits(std::span<const TokenId> context) const {
  const Eigen::MatrixXd all = transformer_forward(weights_, context);
  const auto last = all.row(all.rows() - 1);
  return std::vector<double>(last.begin(), last.end());
}

namespace {

Tensor to_tensor(const std::string& name, const Eigen::MatrixXd& m) {
  Tensor t{name, {m.rows(), m.cols()}, {}};
  t.data.reserve(static_cast<std::size_t>(m.size()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) t.data.push_back(static_cast<float>(m(i, j)));
  }
  return t;
}

Tensor to_tensor(const std::string& name, const Eigen::VectorXd& v) {
  Tensor t{name, {v.size()}, {}};
  for (double x : v) t.data.push_back(static_cast<float>(x));
  return t;
}

Eigen::MatrixXd matrix_from(const TensorFile& f, const std::string& name) {
  const auto& t = f.get(name);
  if (t.shape.size() != 2) throw DataError("transformer: " + name + " must be 2-d");
  Eigen::MatrixXd m(t.shape[0], t.shape[1]);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      m(i, j) = t.data[static_cast<std::size_t>(i * m.cols() + j)];
    }
  }
  return m;
}

Eigen::VectorXd vector_from(const TensorFile& f, const std::string& name) {
  const auto& t = f.get(name);
  if (t.shape.size() != 1) throw DataError("transformer: " + name + " must be 1-d");
  Eigen::VectorXd v(t.shape[0]);
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = t.data[static_cast<std::size_t>(i)];
  return v;
}

}  // namespace

void TransformerWeights::save(const std::filesystem::path& path) const {
  validate();
  const auto& c = config;
  nlohmann::json header = {{"kind", "transformer"},       {"vocab_size", c.vocab_size},
                           {"d_model", c.d_model},         {"n_heads", c.n_heads},
                           {"n_layers", c.n_layers},       {"d_ff", c.d_ff},
                           {"max_len", c.max_len},         {"layer_norm_eps", c.layer_norm_eps}};
  std::vector<Tensor> tensors;
  tensors.push_back(to_tensor("W_e", token_embedding));
  tensors.push_back(to_tensor("W_p", position_embedding));
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const auto& L = layers[l];
    const std::string p = "layer" + std::to_string(l) + ".";
    tensors.push_back(to_tensor(p + "ln1_gain", L.ln1_gain));
    tensors.push_back(to_tensor(p + "ln1_bias", L.ln1_bias));
    for (std::size_t h = 0; h < L.wq.size(); ++h) {
      tensors.push_back(to_tensor(p + "W_Q" + std::to_string(h), L.wq[h]));
      tensors.push_back(to_tensor(p + "W_K" + std::to_string(h), L.wk[h]));
      tensors.push_back(to_tensor(p + "W_V" + std::to_string(h), L.wv[h]));
    }
    tensors.push_back(to_tensor(p + "W_0", L.wo));
    tensors.push_back(to_tensor(p + "ln2_gain", L.ln2_gain));
    tensors.push_back(to_tensor(p + "ln2_bias", L.ln2_bias));
    tensors.push_back(to_tensor(p + "ff_w1", L.w1));
    tensors.push_back(to_tensor(p + "ff_b1", L.b1));
    tensors.push_back(to_tensor(p + "ff_w2", L.w2));
    tensors.push_back(to_tensor(p + "ff_b2", L.b2));
  }
  write_tensor_file(path, header, tensors);
}

TransformerWeights TransformerWeights::load(const std::filesystem::path& path) {
  const auto f = read_tensor_file(path);
  TransformerWeights w;
  auto& c = w.config;
  try {
    c.vocab_size = f.header.at("vocab_size").get<std::size_t>();
    c.d_model = f.header.at("d_model").get<std::size_t>();
    c.n_heads = f.header.at("n_heads").get<std::size_t>();
    c.n_layers = f.header.at("n_layers").get<std::size_t>();
    c.d_ff = f.header.at("d_ff").get<std::size_t>();
    c.max_len = f.header.at("max_len").get<std::size_t>();
    c.layer_norm_eps = f.header.value("layer_norm_eps", 1e-5);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(path.string() + ": " + e.what());
  }
  w.token_embedding = matrix_from(f, "W_e");
  w.position_embedding = matrix_from(f, "W_p");
  for (std::size_t l = 0; l < c.n_layers; ++l) {
    const std::string p = "layer" + std::to_string(l) + ".";
    TransformerLayer L;
    L.ln1_gain = vector_from(f, p + "ln1_gain");
    L.ln1_bias = vector_from(f, p + "ln1_bias");
    for (std::size_t h = 0; h < c.n_heads; ++h) {
      L.wq.push_back(matrix_from(f, p + "W_Q" + std::to_string(h)));
      L.wk.push_back(matrix_from(f, p + "W_K" + std::to_string(h)));
      L.wv.push_back(matrix_from(f, p + "W_V" + std::to_string(h)));
    }
    L.wo = matrix_from(f, p + "W_0");
    L.ln2_gain = vector_from(f, p + "ln2_gain");
    L.ln2_bias = vector_from(f, p + "ln2_bias");
    L.w1 = matrix_from(f, p + "ff_w1");
    L.b1 = vector_from(f, p + "ff_b1");
    L.w2 = matrix_from(f, p + "ff_w2");
    L.b2 = vector_from(f, p + "ff_b2");
    w.layers.push_back(std::move(L));
  }
  w.validate();
  return w;
}

}  // namespace tlg
