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
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "tlg/common/rng.hpp"
#include "tlg/common/types.hpp"
#include "tlg/corpus/corpus.hpp"
#include "tlg/topics/topic_model.hpp"

namespace tlg {

struct LdaOptions {
  std::size_t num_topics = 8;
  double alpha = 0.1;       // symmetric document-topic prior
  double eta = 0.0;         // topic-token prior; <= 0 means 1 / num_topics
  bool learn_eta = false;   // Newton step on a symmetric eta after each update
  std::size_t batch_size = 200;
  std::size_t max_iterations = 600;  // minibatch updates
  double tolerance = 1e-5;  // mean |delta phi| between passes
  double tau0 = 1.0;
  double kappa = 0.7;
  std::size_t estep_max_iterations = 100;
  double estep_tolerance = 1e-3;
  std::uint64_t seed = 0;
};

// Online variational Bayes LDA. phi is stored over the full vocabulary;
// columns of tokens outside kept_mask are zero.
class LdaModel final : public TopicModel {
 public:
  LdaModel(Eigen::MatrixXd phi, std::vector<std::uint8_t> kept_mask, Eigen::VectorXd topic_weight,
           double alpha, double eta);

  static LdaModel load(const std::filesystem::path& path);

  TopicKind kind() const override { return TopicKind::kLda; }
  std::size_t num_topics() const override { return static_cast<std::size_t>(phi_.rows()); }
  std::size_t vocab_size() const override { return static_cast<std::size_t>(phi_.cols()); }
  const std::vector<std::uint8_t>& kept_mask() const override { return kept_mask_; }
  std::vector<double> topic_scores(std::size_t topic) const override;
  void save(const std::filesystem::path& path) const override;

  const Eigen::MatrixXd& phi() const { return phi_; }
  // Expected share of corpus tokens per topic; the P(t_j) of the
  // Bayes-inverted prior.
  const Eigen::VectorXd& topic_weight() const { return topic_weight_; }
  double alpha() const { return alpha_; }
  double eta() const { return eta_; }

  std::size_t iterations = 0;
  std::size_t passes = 0;
  bool converged = false;

 private:
  Eigen::MatrixXd phi_;
  std::vector<std::uint8_t> kept_mask_;
  Eigen::VectorXd topic_weight_;
  double alpha_;
  double eta_;
};

LdaModel train_lda(const Corpus& corpus, const LdaOptions& options);

// Document-topic mixture by fold-in EM against a fixed phi: theta maximizes
// sum_w f_w log sum_k theta_k phi(k, w) where f are the document's relative
// token frequencies. Tokens outside kept_mask are ignored.
std::vector<double> infer_doc_topics(const LdaModel& model, std::span<const TokenId> doc,
                                     std::size_t iterations = 200);

struct SyntheticCorpus {
  std::vector<TokenSeq> documents;
  std::vector<std::vector<double>> theta;
  std::vector<std::vector<int>> assignments;
};

// The LDA generative process over a given phi: theta_d ~ Dir(alpha),
// z ~ Cat(theta_d), x ~ Cat(phi_z).
SyntheticCorpus lda_generate(const Eigen::MatrixXd& phi, std::span<const double> alpha,
                             std::size_t doc_count, std::size_t doc_length, std::uint64_t seed);
SyntheticCorpus lda_generate(const Eigen::MatrixXd& phi, double alpha, std::size_t doc_count,
                             std::size_t doc_length, std::uint64_t seed);

// phi_k ~ Dir(beta) for each of k topics.
Eigen::MatrixXd sample_topics(std::size_t num_topics, std::size_t vocab_size, double beta,
                              std::uint64_t seed);

// One draw from Dir(alpha).
std::vector<double> sample_dirichlet(std::span<const double> alpha, CounterRng& rng);

}  // namespace tlg
