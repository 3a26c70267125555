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

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <sstream>

#include "support/oracles.hpp"
#include "tlg/common/error.hpp"
#include "tlg/common/rng.hpp"
#include "tlg/metrics/word_vectors.hpp"
#include "tlg/topics/lda.hpp"
#include "tlg/topics/lsi.hpp"
#include "tlg/topics/prior.hpp"
#include "tlg/topics/svd.hpp"
#include "tlg/topics/sweep.hpp"

namespace tlg {
namespace {

Corpus unfiltered(const std::vector<TokenSeq>& docs, std::size_t vocab) {
  return filter_corpus(docs, vocab, 0, DocLimit::count(docs.size()));
}

Eigen::MatrixXd one_hot_topics(std::size_t K, std::size_t V) {
  Eigen::MatrixXd phi = Eigen::MatrixXd::Zero(K, V);
  for (std::size_t k = 0; k < K; ++k) phi(k, k) = 1.0;
  return phi;
}

// ---------------------------------------------------------------- generator

TEST(LdaGenerate, OneHotTopicsTinyAlphaGiveSingleTokenDocs) {
  const auto synth = lda_generate(one_hot_topics(4, 4), 1e-6, 200, 20, 1);
  std::size_t pure = 0;
  for (const auto& d : synth.documents) {
    pure += std::all_of(d.begin(), d.end(), [&](TokenId t) { return t == d[0]; });
  }
  EXPECT_GE(pure, 195u);
}

TEST(LdaGenerate, EmpiricalFrequenciesMatchMixture) {
  const Eigen::MatrixXd phi = sample_topics(3, 30, 0.5, 2);
  const auto synth = lda_generate(phi, 0.8, 20000, 100, 3);
  Eigen::VectorXd empirical = Eigen::VectorXd::Zero(30);
  Eigen::VectorXd analytic = Eigen::VectorXd::Zero(30);
  double tokens = 0.0;
  for (std::size_t d = 0; d < synth.documents.size(); ++d) {
    for (TokenId t : synth.documents[d]) empirical(t) += 1.0;
    tokens += static_cast<double>(synth.documents[d].size());
    for (int k = 0; k < 3; ++k) analytic += synth.theta[d][k] * phi.row(k).transpose();
  }
  empirical /= tokens;
  analytic /= static_cast<double>(synth.documents.size());
  EXPECT_LE((empirical - analytic).cwiseAbs().sum(), 0.01);
}

TEST(LdaGenerate, ZeroLengthDocumentsAllowed) {
  const auto synth = lda_generate(one_hot_topics(2, 3), 0.5, 5, 0, 4);
  ASSERT_EQ(synth.documents.size(), 5u);
  for (const auto& d : synth.documents) EXPECT_TRUE(d.empty());
}

TEST(LdaGenerate, AssignmentsAndThetaAreConsistent) {
  const auto synth = lda_generate(sample_topics(3, 10, 0.3, 5), 0.5, 20, 30, 6);
  for (std::size_t d = 0; d < 20; ++d) {
    ASSERT_EQ(synth.assignments[d].size(), 30u);
    double s = 0.0;
    for (double v : synth.theta[d]) s += v;
    EXPECT_NEAR(s, 1.0, 1e-9);
  }
  EXPECT_THROW(lda_generate(Eigen::MatrixXd::Constant(2, 3, 0.5), 0.1, 1, 1, 1), InvalidArgument);
}

// ---------------------------------------------------------------- training

TEST(Lda, RowsAreSimplexAndDeterministic) {
  const auto synth = lda_generate(sample_topics(3, 40, 0.1, 10), 0.1, 300, 50, 11);
  const Corpus c = unfiltered(synth.documents, 40);
  LdaOptions opt;
  opt.num_topics = 3;
  opt.seed = 12;
  opt.batch_size = 64;
  opt.max_iterations = 60;
  const LdaModel a = train_lda(c, opt);
  const LdaModel b = train_lda(c, opt);
  EXPECT_EQ(a.phi(), b.phi());
  for (Eigen::Index k = 0; k < 3; ++k) {
    EXPECT_NEAR(a.phi().row(k).sum(), 1.0, 1e-9);
    EXPECT_GE(a.phi().row(k).minCoeff(), 0.0);
  }
  EXPECT_NEAR(a.topic_weight().sum(), 1.0, 1e-9);
}

TEST(Lda, RecoversPlantedTopics) {
  const Eigen::MatrixXd truth = sample_topics(3, 50, 0.1, 20);
  const auto synth = lda_generate(truth, 0.1, 1000, 100, 21);
  LdaOptions opt;
  opt.num_topics = 3;
  opt.seed = 22;
  const LdaModel m = train_lda(unfiltered(synth.documents, 50), opt);
  for (Eigen::Index k = 0; k < 3; ++k) {
    double best = 2.0;
    for (Eigen::Index j = 0; j < 3; ++j) best = std::min(best, 0.5 * (truth.row(k) - m.phi().row(j)).cwiseAbs().sum());
    EXPECT_LE(best, 0.15) << "topic " << k;
  }
}

TEST(Lda, SingleRepeatedTokenConcentratesBothTopics) {
  const std::vector<TokenSeq> docs = {TokenSeq(30, 3)};
  LdaOptions opt;
  opt.num_topics = 2;
  const LdaModel m = train_lda(unfiltered(docs, 5), opt);
  for (Eigen::Index k = 0; k < 2; ++k) {
    Eigen::Index arg = 0;
    m.phi().row(k).maxCoeff(&arg);
    EXPECT_EQ(arg, 3);
  }
}

TEST(Lda, FilteredTokensGetZeroColumns) {
  const std::vector<TokenSeq> docs = {{0, 1, 2, 3}, {0, 1, 1}, {0, 2, 3, 3}};
  const Corpus c = filter_corpus(docs, 6, 1, DocLimit::count(2));  // token 0 in every doc
  LdaOptions opt;
  opt.num_topics = 2;
  const LdaModel m = train_lda(c, opt);
  EXPECT_EQ(m.phi().col(0).sum(), 0.0);
  EXPECT_EQ(m.phi().col(5).sum(), 0.0);
  EXPECT_EQ(m.kept_mask(), c.kept_mask);
}

TEST(Lda, Errors) {
  const std::vector<TokenSeq> docs = {{0, 1}, {1, 2}};
  LdaOptions opt;
  opt.num_topics = 1;
  EXPECT_THROW(train_lda(unfiltered(docs, 3), opt), InvalidArgument);
  opt.num_topics = 4;
  EXPECT_THROW(train_lda(unfiltered(docs, 3), opt), InvalidArgument);  // K > kept vocabulary
}

TEST(Lda, LearnedEtaStaysPositive) {
  const auto synth = lda_generate(sample_topics(3, 30, 0.1, 30), 0.1, 200, 40, 31);
  LdaOptions opt;
  opt.num_topics = 3;
  opt.learn_eta = true;
  opt.max_iterations = 40;
  const LdaModel m = train_lda(unfiltered(synth.documents, 30), opt);
  EXPECT_GT(m.eta(), 0.0);
  EXPECT_TRUE(std::isfinite(m.eta()));
  EXPECT_TRUE(m.phi().allFinite());
}

TEST(Lda, SaveLoadRoundTrip) {
  const auto synth = lda_generate(sample_topics(3, 20, 0.2, 40), 0.3, 100, 30, 41);
  LdaOptions opt;
  opt.num_topics = 3;
  opt.max_iterations = 20;
  const LdaModel m = train_lda(unfiltered(synth.documents, 20), opt);
  const auto path = std::filesystem::temp_directory_path() / "tlg_lda.bin";
  m.save(path);
  const auto loaded = load_topic_model(path);
  ASSERT_EQ(loaded->kind(), TopicKind::kLda);
  const auto& back = dynamic_cast<const LdaModel&>(*loaded);
  EXPECT_LE((back.phi() - m.phi()).cwiseAbs().maxCoeff(), 1e-6);
  for (Eigen::Index k = 0; k < 3; ++k) EXPECT_NEAR(back.phi().row(k).sum(), 1.0, 1e-12);
  EXPECT_EQ(back.kept_mask(), m.kept_mask());
  std::filesystem::remove(path);
}

// ---------------------------------------------------------------- inference

TEST(InferDocTopics, OneHotTopicDocumentIsRecovered) {
  const LdaModel m(one_hot_topics(3, 5) * 0.8 + Eigen::MatrixXd::Constant(3, 5, 0.04), std::vector<std::uint8_t>(5, 1),
                   Eigen::VectorXd::Constant(3, 1.0 / 3), 0.1, 0.1);
  const auto theta = infer_doc_topics(m, TokenSeq(20, 1));
  EXPECT_GE(theta[1], 0.9);
}

TEST(InferDocTopics, UniformTopicsGiveUniformTheta) {
  const LdaModel m(Eigen::MatrixXd::Constant(4, 6, 1.0 / 6), std::vector<std::uint8_t>(6, 1),
                   Eigen::VectorXd::Constant(4, 0.25), 0.1, 0.1);
  const auto theta = infer_doc_topics(m, TokenSeq{0, 1, 2, 5, 5});
  for (double v : theta) EXPECT_NEAR(v, 0.25, 0.05);
}

TEST(InferDocTopics, DoubledDocumentUnchanged) {
  const Eigen::MatrixXd phi = sample_topics(4, 25, 0.2, 50);
  const LdaModel m(phi, std::vector<std::uint8_t>(25, 1), Eigen::VectorXd::Constant(4, 0.25), 0.1, 0.1);
  const TokenSeq doc = {1, 4, 4, 7, 9, 13, 13, 13, 20, 24};
  TokenSeq twice = doc;
  twice.insert(twice.end(), doc.begin(), doc.end());
  const auto a = infer_doc_topics(m, doc);
  const auto b = infer_doc_topics(m, twice);
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    EXPECT_NEAR(a[k], b[k], 1e-6);
    s += a[k];
  }
  EXPECT_NEAR(s, 1.0, 1e-9);
}

TEST(InferDocTopics, NoKeptTokensIsError) {
  std::vector<std::uint8_t> mask = {1, 1, 0, 0};
  const LdaModel m(Eigen::MatrixXd::Constant(2, 4, 0.25), mask, Eigen::VectorXd::Constant(2, 0.5), 0.1, 0.1);
  EXPECT_THROW(infer_doc_topics(m, TokenSeq{2, 3, 3}), DataError);
}

// ---------------------------------------------------------------- svd / lsi

TEST(RandomizedSvd, MatchesJacobiOracle) {
  CounterRng rng(60);
  Eigen::MatrixXd X(20, 15);
  testing::Mat m(20, testing::Vec(15));
  for (int i = 0; i < 20; ++i) {
    for (int j = 0; j < 15; ++j) m[i][j] = X(i, j) = rng.normal();
  }
  const auto want = testing::jacobi_singular_values(m);
  const auto got = randomized_svd(X, 6, {.seed = 1});
  for (int k = 0; k < 6; ++k) EXPECT_NEAR(got.sigma(k), want[k], 1e-6);
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(6, 6);
  EXPECT_LE((got.U.transpose() * got.U - I).cwiseAbs().maxCoeff(), 1e-6);
  EXPECT_LE((got.V.transpose() * got.V - I).cwiseAbs().maxCoeff(), 1e-6);
}

TEST(RandomizedSvd, FullRankReconstruction) {
  CounterRng rng(61);
  Eigen::MatrixXd X(12, 9);
  for (int i = 0; i < 12; ++i) {
    for (int j = 0; j < 9; ++j) X(i, j) = rng.normal();
  }
  const auto s = randomized_svd(X, 9);
  EXPECT_LE((s.U * s.sigma.asDiagonal() * s.V.transpose() - X).norm(), 1e-6);
}

TEST(RandomizedSvd, ErrorNonIncreasingInRank) {
  CounterRng rng(62);
  Eigen::MatrixXd X(25, 18);
  for (int i = 0; i < 25; ++i) {
    for (int j = 0; j < 18; ++j) X(i, j) = rng.normal();
  }
  double prev = X.norm();
  for (std::size_t k = 1; k <= 18; ++k) {
    const auto s = randomized_svd(X, k, {.seed = 3});
    const double err = (s.U * s.sigma.asDiagonal() * s.V.transpose() - X).norm();
    EXPECT_LE(err, prev + 1e-9);
    prev = err;
    for (Eigen::Index i = 1; i < s.sigma.size(); ++i) EXPECT_LE(s.sigma(i), s.sigma(i - 1));
  }
}

TEST(RandomizedSvd, SeedDeterminismAndErrors) {
  Eigen::MatrixXd X = Eigen::MatrixXd::Random(10, 8);
  const auto a = randomized_svd(X, 3, {.seed = 9});
  const auto b = randomized_svd(X, 3, {.seed = 9});
  EXPECT_EQ(a.U, b.U);
  EXPECT_THROW(randomized_svd(X, 0), InvalidArgument);
  EXPECT_THROW(randomized_svd(X, 9), InvalidArgument);
}

TEST(Lsi, SparseInputOrthonormalAndSaveLoad) {
  CounterRng rng(70);
  std::vector<TokenSeq> docs(40);
  for (auto& d : docs) {
    for (int i = 0; i < 25; ++i) d.push_back(static_cast<TokenId>(rng.next_u64() % 30));
  }
  const Corpus c = unfiltered(docs, 30);
  const LsiModel m = train_lsi(token_doc_matrix(c), 5, {.seed = 1}, c.kept_mask);
  EXPECT_LE((m.U().transpose() * m.U() - Eigen::MatrixXd::Identity(5, 5)).cwiseAbs().maxCoeff(), 1e-6);
  for (std::size_t j = 0; j < 5; ++j) {
    const auto s = m.topic_scores(j);
    double n = 0.0;
    for (double v : s) n += v * v;
    EXPECT_NEAR(std::sqrt(n), 1.0, 1e-9);
  }
  const auto path = std::filesystem::temp_directory_path() / "tlg_lsi.bin";
  m.save(path);
  const auto loaded = load_topic_model(path);
  EXPECT_EQ(loaded->kind(), TopicKind::kLsi);
  EXPECT_EQ(loaded->num_topics(), 5u);
  EXPECT_THROW(train_lsi(token_doc_matrix(c), 0), InvalidArgument);
  std::filesystem::remove(path);
}

// ---------------------------------------------------------------- prior

TEST(TopicPrior, LdaDirectMap) {
  Eigen::MatrixXd phi(2, 2);
  phi << 0.9, 0.1, 0.5, 0.5;
  const LdaModel m(phi, {1, 1}, Eigen::VectorXd::Constant(2, 0.5), 0.1, 0.1);
  const auto p = topic_prior(m, 0);
  EXPECT_DOUBLE_EQ(p.logprob[0], std::log(0.9));
  EXPECT_DOUBLE_EQ(p.logprob[1], std::log(0.1));
  EXPECT_THROW(topic_prior(m, 2), InvalidArgument);
}

TEST(TopicPrior, LsiNegativeScoreHitsFloor) {
  Eigen::MatrixXd U(3, 1);
  U << 0.6, -0.2, std::sqrt(1.0 - 0.36 - 0.04);
  const LsiModel m(U, Eigen::VectorXd::Constant(1, 2.0), {});
  const auto p = topic_prior(m, 0, {.epsilon = 1e-10});
  EXPECT_DOUBLE_EQ(p.logprob[1], std::log(1e-10));
  EXPECT_NEAR(p.logprob[0], std::log(0.6), 1e-12);
}

TEST(TopicPrior, FilteredTokensAreNeutral) {
  Eigen::MatrixXd phi(2, 4);
  phi << 0.5, 0.5, 0.0, 0.0, 0.2, 0.8, 0.0, 0.0;
  const LdaModel m(phi, {1, 1, 0, 0}, Eigen::VectorXd::Constant(2, 0.5), 0.1, 0.1);
  const auto p = topic_prior(m, 1);
  EXPECT_EQ(p.logprob[2], 0.0);
  EXPECT_EQ(p.logprob[3], 0.0);
  EXPECT_EQ(p.score[2], 0.0);
  for (double v : p.logprob) {
    EXPECT_TRUE(std::isfinite(v));
    EXPECT_LE(v, 0.0);
  }
  // over the topic vocabulary the prior exp-sums to at most 1 per topic
  EXPECT_LE(std::exp(p.logprob[0]) + std::exp(p.logprob[1]), 1.0 + 1e-12);
}

TEST(TopicPrior, BayesInvertedIsPosteriorOverTopics) {
  Eigen::MatrixXd phi(2, 3);
  phi << 0.6, 0.3, 0.1, 0.1, 0.3, 0.6;
  Eigen::VectorXd w(2);
  w << 0.25, 0.75;
  const LdaModel m(phi, {1, 1, 1}, w, 0.1, 0.1);
  const auto p0 = topic_prior(m, 0, {.bayes_inverted = true});
  const auto p1 = topic_prior(m, 1, {.bayes_inverted = true});
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(p0.score[i] + p1.score[i], 1.0, 1e-12);
  EXPECT_NEAR(p0.score[0], 0.6 * 0.25 / (0.6 * 0.25 + 0.1 * 0.75), 1e-12);
  const LsiModel lsi(Eigen::MatrixXd::Identity(3, 2), Eigen::VectorXd::Ones(2), {});
  EXPECT_THROW(topic_prior(lsi, 0, {.bayes_inverted = true}), InvalidArgument);
}

// ---------------------------------------------------------------- sweep

TEST(Sweep, PlantedThreeTopicsBeatThirty) {
  const Eigen::MatrixXd truth = sample_topics(3, 60, 0.05, 80);
  const auto synth = lda_generate(truth, 0.05, 600, 60, 81);
  const auto vectors = train_word_vectors(synth.documents, 60, {.dim = 20, .window = 5, .seed = 1});
  const std::vector<SweepCell> grid = {
      {.min_doc = 1, .max_doc = DocLimit::fraction(1.0), .num_topics = 3},
      {.min_doc = 1, .max_doc = DocLimit::fraction(1.0), .num_topics = 30}};
  SweepOptions opt;
  opt.lda.max_iterations = 100;
  opt.jobs = 2;
  const auto rows = sweep(synth.documents, 60, grid, vectors, opt);
  ASSERT_EQ(rows.size(), 2u);
  ASSERT_TRUE(rows[0].coherence && rows[1].coherence);
  EXPECT_EQ(rows[0].cell.num_topics, 3u);  // sorted best first
  EXPECT_GE(*rows[0].coherence, *rows[1].coherence);
}

TEST(Sweep, OneCellAndFailedCellReported) {
  const auto synth = lda_generate(sample_topics(2, 20, 0.1, 90), 0.1, 100, 30, 91);
  const auto vectors = train_word_vectors(synth.documents, 20, {.dim = 5, .window = 3});
  const std::vector<SweepCell> one = {{.min_doc = 1, .max_doc = DocLimit::count(100), .num_topics = 2}};
  SweepOptions opt;
  opt.kind = TopicKind::kLsi;
  const auto rows = sweep(synth.documents, 20, one, vectors, opt);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_TRUE(rows[0].coherence.has_value());

  const std::vector<SweepCell> bad = {{.min_doc = 50, .max_doc = DocLimit::count(10), .num_topics = 2},
                                      {.min_doc = 1, .max_doc = DocLimit::count(100), .num_topics = 2}};
  const auto mixed = sweep(synth.documents, 20, bad, vectors, opt);
  ASSERT_EQ(mixed.size(), 2u);
  EXPECT_TRUE(mixed[0].coherence.has_value());
  EXPECT_FALSE(mixed[1].coherence.has_value());
  EXPECT_FALSE(mixed[1].error.empty());

  std::ostringstream csv;
  write_sweep_csv(csv, mixed);
  EXPECT_EQ(csv.str().substr(0, csv.str().find('\n')), "min_doc,max_doc,K,coherence");
}

}  // namespace
}  // namespace tlg
