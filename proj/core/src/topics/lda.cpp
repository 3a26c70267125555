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

#include "tlg/topics/lda.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/trigamma.hpp>

#include "tlg/common/blob_io.hpp"
#include "tlg/common/error.hpp"

namespace tlg {

namespace {

using boost::math::digamma;

// A document over the compact (kept) vocabulary.
struct BagOfWords {
  std::vector<Eigen::Index> ids;
  std::vector<double> counts;
  double total = 0.0;
};

Eigen::MatrixXd exp_dirichlet_expectation(const Eigen::MatrixXd& lambda) {
  Eigen::MatrixXd out(lambda.rows(), lambda.cols());
  for (Eigen::Index k = 0; k < lambda.rows(); ++k) {
    const double row_psi = digamma(lambda.row(k).sum());
    for (Eigen::Index w = 0; w < lambda.cols(); ++w) {
      out(k, w) = std::exp(digamma(lambda(k, w)) - row_psi);
    }
  }
  return out;
}

Eigen::VectorXd exp_dirichlet_expectation(const Eigen::VectorXd& gamma) {
  const double total_psi = digamma(gamma.sum());
  Eigen::VectorXd out(gamma.size());
  for (Eigen::Index k = 0; k < gamma.size(); ++k) out(k) = std::exp(digamma(gamma(k)) - total_psi);
  return out;
}

Eigen::MatrixXd normalize_rows(const Eigen::MatrixXd& m) {
  Eigen::MatrixXd out = m;
  for (Eigen::Index k = 0; k < out.rows(); ++k) out.row(k) /= out.row(k).sum();
  return out;
}

// Variational E-step for one document; adds its contribution to sstats
// (before the final elementwise product with exp E[log beta]).
void e_step(const BagOfWords& doc, const Eigen::MatrixXd& exp_elog_beta, double alpha,
            const LdaOptions& options, Eigen::MatrixXd& sstats) {
  const Eigen::Index K = exp_elog_beta.rows();
  const auto n = static_cast<Eigen::Index>(doc.ids.size());
  Eigen::MatrixXd beta_d(K, n);
  Eigen::VectorXd cts(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    beta_d.col(j) = exp_elog_beta.col(doc.ids[static_cast<std::size_t>(j)]);
    cts(j) = doc.counts[static_cast<std::size_t>(j)];
  }

  Eigen::VectorXd gamma = Eigen::VectorXd::Constant(K, alpha + doc.total / static_cast<double>(K));
  Eigen::VectorXd exp_elog_theta = exp_dirichlet_expectation(gamma);
  Eigen::RowVectorXd phinorm = exp_elog_theta.transpose() * beta_d;
  phinorm.array() += 1e-100;
  for (std::size_t it = 0; it < options.estep_max_iterations; ++it) {
    const Eigen::VectorXd last = gamma;
    const Eigen::VectorXd weighted = beta_d * (cts.array() / phinorm.transpose().array()).matrix();
    gamma = (alpha + exp_elog_theta.array() * weighted.array()).matrix();
    exp_elog_theta = exp_dirichlet_expectation(gamma);
    phinorm = exp_elog_theta.transpose() * beta_d;
    phinorm.array() += 1e-100;
    if ((gamma - last).cwiseAbs().mean() < options.estep_tolerance) break;
  }
  const Eigen::RowVectorXd ratio = (cts.transpose().array() / phinorm.array()).matrix();
  for (Eigen::Index j = 0; j < n; ++j) {
    sstats.col(doc.ids[static_cast<std::size_t>(j)]) += exp_elog_theta * ratio(j);
  }
}

double newton_eta(double eta, const Eigen::MatrixXd& lambda, double rho) {
  const auto K = static_cast<double>(lambda.rows());
  const auto W = static_cast<double>(lambda.cols());
  double elog_sum = 0.0;
  for (Eigen::Index k = 0; k < lambda.rows(); ++k) {
    const double row_psi = digamma(lambda.row(k).sum());
    for (Eigen::Index w = 0; w < lambda.cols(); ++w) elog_sum += digamma(lambda(k, w)) - row_psi;
  }
  const double grad = K * W * (digamma(W * eta) - digamma(eta)) + elog_sum;
  const double hess =
      K * (W * W * boost::math::trigamma(W * eta) - W * boost::math::trigamma(eta));
  const double next = eta - rho * grad / hess;
  return next > 0.0 && std::isfinite(next) ? next : eta;
}

}  // namespace

LdaModel::LdaModel(Eigen::MatrixXd phi, std::vector<std::uint8_t> kept_mask,
                   Eigen::VectorXd topic_weight, double alpha, double eta)
    : phi_(std::move(phi)),
      kept_mask_(std::move(kept_mask)),
      topic_weight_(std::move(topic_weight)),
      alpha_(alpha),
      eta_(eta) {
  if (static_cast<std::size_t>(phi_.cols()) != kept_mask_.size()) {
    throw InvalidArgument("lda: kept_mask length does not match phi columns");
  }
  if (topic_weight_.size() != phi_.rows()) {
    throw InvalidArgument("lda: topic_weight length does not match phi rows");
  }
}

std::vector<double> LdaModel::topic_scores(std::size_t topic) const {
  if (topic >= num_topics()) {
    throw InvalidArgument("topic " + std::to_string(topic) + " out of range [0, " +
                          std::to_string(num_topics()) + ")");
  }
  std::vector<double> out(vocab_size());
  for (std::size_t w = 0; w < out.size(); ++w) {
    out[w] = phi_(static_cast<Eigen::Index>(topic), static_cast<Eigen::Index>(w));
  }
  return out;
}

LdaModel train_lda(const Corpus& corpus, const LdaOptions& options) {
  const std::size_t K = options.num_topics;
  if (K < 2) throw InvalidArgument("train_lda: need at least 2 topics");
  if (corpus.documents.empty()) throw DataError("train_lda: empty corpus");
  if (options.batch_size == 0) throw InvalidArgument("train_lda: batch_size must be positive");

  std::vector<Eigen::Index> compact(corpus.vocab_size, -1);
  std::vector<TokenId> full;
  for (std::size_t i = 0; i < corpus.vocab_size; ++i) {
    if (corpus.kept_mask[i]) {
      compact[i] = static_cast<Eigen::Index>(full.size());
      full.push_back(static_cast<TokenId>(i));
    }
  }
  const std::size_t W = full.size();
  if (K > W) {
    throw InvalidArgument("train_lda: " + std::to_string(K) + " topics exceed kept vocabulary of " +
                          std::to_string(W));
  }

  std::vector<BagOfWords> docs;
  docs.reserve(corpus.documents.size());
  for (const auto& d : corpus.documents) {
    std::vector<Eigen::Index> ids;
    for (TokenId t : d) ids.push_back(compact[static_cast<std::size_t>(t)]);
    std::sort(ids.begin(), ids.end());
    BagOfWords bag;
    for (std::size_t i = 0; i < ids.size();) {
      std::size_t j = i;
      while (j < ids.size() && ids[j] == ids[i]) ++j;
      bag.ids.push_back(ids[i]);
      bag.counts.push_back(static_cast<double>(j - i));
      i = j;
    }
    bag.total = static_cast<double>(ids.size());
    docs.push_back(std::move(bag));
  }
  const std::size_t D = docs.size();

  CounterRng rng(options.seed, 1);
  std::vector<std::size_t> order(D);
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t i = D; i > 1; --i) std::swap(order[i - 1], order[rng.next_u64() % i]);

  const auto Ki = static_cast<Eigen::Index>(K);
  const auto Wi = static_cast<Eigen::Index>(W);
  double eta = options.eta > 0.0 ? options.eta : 1.0 / static_cast<double>(K);
  Eigen::MatrixXd lambda(Ki, Wi);
  for (Eigen::Index k = 0; k < Ki; ++k) {
    for (Eigen::Index w = 0; w < Wi; ++w) lambda(k, w) = std::exp(rng.log_gamma_variate(100.0)) / 100.0;
  }
  Eigen::MatrixXd exp_elog_beta = exp_dirichlet_expectation(lambda);
  Eigen::MatrixXd prev_phi = normalize_rows(lambda);

  std::size_t cursor = 0;
  std::size_t consumed = 0;
  std::size_t iterations = 0;
  std::size_t passes = 0;
  bool converged = false;
  Eigen::MatrixXd sstats(Ki, Wi);
  for (std::size_t t = 0; t < options.max_iterations; ++t) {
    const std::size_t batch = std::min(options.batch_size, D);
    sstats.setZero();
    for (std::size_t b = 0; b < batch; ++b) {
      e_step(docs[order[cursor]], exp_elog_beta, options.alpha, options, sstats);
      cursor = (cursor + 1) % D;
    }
    sstats.array() *= exp_elog_beta.array();

    const double rho = std::pow(options.tau0 + static_cast<double>(t), -options.kappa);
    const double scale = static_cast<double>(D) / static_cast<double>(batch);
    lambda = (1.0 - rho) * lambda + rho * (eta + scale * sstats.array()).matrix();
    if (options.learn_eta) eta = newton_eta(eta, lambda, rho);
    exp_elog_beta = exp_dirichlet_expectation(lambda);
    ++iterations;

    consumed += batch;
    if (consumed >= D) {
      consumed -= D;
      ++passes;
      Eigen::MatrixXd phi = normalize_rows(lambda);
      const double change = (phi - prev_phi).cwiseAbs().mean();
      prev_phi = std::move(phi);
      if (change < options.tolerance) {
        converged = true;
        break;
      }
    }
  }

  const Eigen::MatrixXd compact_phi = normalize_rows(lambda);
  Eigen::MatrixXd phi = Eigen::MatrixXd::Zero(Ki, static_cast<Eigen::Index>(corpus.vocab_size));
  for (std::size_t w = 0; w < W; ++w) phi.col(full[w]) = compact_phi.col(static_cast<Eigen::Index>(w));

  Eigen::VectorXd weight = (lambda.array() - eta).cwiseMax(0.0).rowwise().sum();
  if (weight.sum() > 0.0) {
    weight /= weight.sum();
  } else {
    weight.setConstant(1.0 / static_cast<double>(K));
  }

  LdaModel model(std::move(phi), corpus.kept_mask, std::move(weight), options.alpha, eta);
  model.iterations = iterations;
  model.passes = passes;
  model.converged = converged;
  return model;
}

std::vector<double> infer_doc_topics(const LdaModel& model, std::span<const TokenId> doc,
                                     std::size_t iterations) {
  const auto& mask = model.kept_mask();
  std::vector<std::pair<TokenId, double>> bag;
  double total = 0.0;
  {
    std::vector<TokenId> ids;
    for (TokenId t : doc) {
      if (t >= 0 && static_cast<std::size_t>(t) < mask.size() && mask[static_cast<std::size_t>(t)]) {
        ids.push_back(t);
      }
    }
    if (ids.empty()) throw DataError("infer_doc_topics: document has no in-vocabulary tokens");
    std::sort(ids.begin(), ids.end());
    for (std::size_t i = 0; i < ids.size();) {
      std::size_t j = i;
      while (j < ids.size() && ids[j] == ids[i]) ++j;
      bag.emplace_back(ids[i], static_cast<double>(j - i));
      i = j;
    }
    total = static_cast<double>(ids.size());
  }
  for (auto& [id, f] : bag) f /= total;

  const auto& phi = model.phi();
  const auto K = static_cast<std::size_t>(phi.rows());
  std::vector<double> theta(K, 1.0 / static_cast<double>(K));
  std::vector<double> next(K);
  for (std::size_t it = 0; it < iterations; ++it) {
    std::fill(next.begin(), next.end(), 0.0);
    for (const auto& [id, f] : bag) {
      double mix = 0.0;
      for (std::size_t k = 0; k < K; ++k) mix += theta[k] * phi(static_cast<Eigen::Index>(k), id);
      if (mix <= 0.0) continue;
      for (std::size_t k = 0; k < K; ++k) {
        next[k] += f * theta[k] * phi(static_cast<Eigen::Index>(k), id) / mix;
      }
    }
    const double norm = std::accumulate(next.begin(), next.end(), 0.0);
    double change = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
      const double v = next[k] / norm;
      change = std::max(change, std::abs(v - theta[k]));
      theta[k] = v;
    }
    if (change < 1e-13) break;
  }
  return theta;
}

std::vector<double> sample_dirichlet(std::span<const double> alpha, CounterRng& rng) {
  std::vector<double> logs(alpha.size());
  double peak = kNegInf;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    logs[i] = rng.log_gamma_variate(alpha[i]);
    peak = std::max(peak, logs[i]);
  }
  double total = 0.0;
  for (double& v : logs) {
    v = std::exp(v - peak);
    total += v;
  }
  for (double& v : logs) v /= total;
  return logs;
}

SyntheticCorpus lda_generate(const Eigen::MatrixXd& phi, std::span<const double> alpha,
                             std::size_t doc_count, std::size_t doc_length, std::uint64_t seed) {
  const auto K = static_cast<std::size_t>(phi.rows());
  if (alpha.size() != K) throw InvalidArgument("lda_generate: alpha length must equal topic count");
  std::vector<std::vector<double>> rows(K);
  for (std::size_t k = 0; k < K; ++k) {
    const auto r = phi.row(static_cast<Eigen::Index>(k));
    rows[k].assign(r.begin(), r.end());
    const double s = std::accumulate(rows[k].begin(), rows[k].end(), 0.0);
    if (std::abs(s - 1.0) > 1e-6) throw InvalidArgument("lda_generate: phi rows must sum to 1");
  }
  CounterRng rng(seed, 2);
  SyntheticCorpus out;
  out.documents.reserve(doc_count);
  for (std::size_t d = 0; d < doc_count; ++d) {
    auto theta = sample_dirichlet(alpha, rng);
    TokenSeq doc;
    std::vector<int> z;
    doc.reserve(doc_length);
    for (std::size_t w = 0; w < doc_length; ++w) {
      const auto topic = rng.categorical(theta);
      z.push_back(static_cast<int>(topic));
      doc.push_back(static_cast<TokenId>(rng.categorical(rows[topic])));
    }
    out.documents.push_back(std::move(doc));
    out.theta.push_back(std::move(theta));
    out.assignments.push_back(std::move(z));
  }
  return out;
}

SyntheticCorpus lda_generate(const Eigen::MatrixXd& phi, double alpha, std::size_t doc_count,
                             std::size_t doc_length, std::uint64_t seed) {
  const std::vector<double> a(static_cast<std::size_t>(phi.rows()), alpha);
  return lda_generate(phi, a, doc_count, doc_length, seed);
}

Eigen::MatrixXd sample_topics(std::size_t num_topics, std::size_t vocab_size, double beta,
                              std::uint64_t seed) {
  CounterRng rng(seed, 3);
  const std::vector<double> b(vocab_size, beta);
  Eigen::MatrixXd phi(static_cast<Eigen::Index>(num_topics), static_cast<Eigen::Index>(vocab_size));
  for (std::size_t k = 0; k < num_topics; ++k) {
    const auto row = sample_dirichlet(b, rng);
    for (std::size_t w = 0; w < vocab_size; ++w) {
      phi(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(w)) = row[w];
    }
  }
  return phi;
}

void LdaModel::save(const std::filesystem::path& path) const {
  nlohmann::json header = {{"kind", "lda"},
                           {"K", num_topics()},
                           {"vocab_size", vocab_size()},
                           {"alpha", alpha_},
                           {"eta", eta_},
                           {"iterations", iterations},
                           {"passes", passes},
                           {"converged", converged}};
  Tensor phi{"phi", {phi_.rows(), phi_.cols()}, {}};
  phi.data.reserve(static_cast<std::size_t>(phi_.size()));
  for (Eigen::Index k = 0; k < phi_.rows(); ++k) {
    for (Eigen::Index w = 0; w < phi_.cols(); ++w) phi.data.push_back(static_cast<float>(phi_(k, w)));
  }
  Tensor mask{"kept_mask", {static_cast<std::int64_t>(kept_mask_.size())}, {}};
  for (auto m : kept_mask_) mask.data.push_back(m ? 1.0f : 0.0f);
  Tensor weight{"topic_weight", {topic_weight_.size()}, {}};
  for (double v : topic_weight_) weight.data.push_back(static_cast<float>(v));
  write_tensor_file(path, header, {phi, mask, weight});
}

LdaModel LdaModel::load(const std::filesystem::path& path) {
  const auto file = read_tensor_file(path);
  if (file.header.value("kind", std::string()) != "lda") {
    throw DataError(path.string() + " is not an lda model");
  }
  const auto& phi_t = file.get("phi");
  if (phi_t.shape.size() != 2) throw DataError("lda: phi must be 2-d");
  Eigen::MatrixXd phi(phi_t.shape[0], phi_t.shape[1]);
  for (Eigen::Index k = 0; k < phi.rows(); ++k) {
    for (Eigen::Index w = 0; w < phi.cols(); ++w) {
      phi(k, w) = phi_t.data[static_cast<std::size_t>(k * phi.cols() + w)];
    }
    const double s = phi.row(k).sum();
    if (!(s > 0.0)) throw DataError("lda: topic row " + std::to_string(k) + " is empty");
    phi.row(k) /= s;  // float32 storage drifts from exact row sums
  }
  const auto& mask_t = file.get("kept_mask");
  std::vector<std::uint8_t> mask;
  for (float v : mask_t.data) mask.push_back(v != 0.0f ? 1 : 0);
  const auto& w_t = file.get("topic_weight");
  Eigen::VectorXd weight(static_cast<Eigen::Index>(w_t.data.size()));
  for (std::size_t i = 0; i < w_t.data.size(); ++i) weight(static_cast<Eigen::Index>(i)) = w_t.data[i];
  LdaModel model(std::move(phi), std::move(mask), std::move(weight),
                 file.header.value("alpha", 0.1), file.header.value("eta", 0.1));
  model.iterations = file.header.value("iterations", std::size_t{0});
  model.passes = file.header.value("passes", std::size_t{0});
  model.converged = file.header.value("converged", false);
  return model;
}

}  // namespace tlg
