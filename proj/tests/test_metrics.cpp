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

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <sstream>

#include "support/fake_logits.hpp"
#include "tlg/common/error.hpp"
#include "tlg/common/rng.hpp"
#include "tlg/lm/source.hpp"
#include "tlg/metrics/bench.hpp"
#include "tlg/metrics/measures.hpp"
#include "tlg/metrics/report.hpp"
#include "tlg/metrics/word_vectors.hpp"
#include "tlg/topics/lda.hpp"
#include "tlg/topics/prior.hpp"

namespace tlg {
namespace {

std::vector<double> random_simplex(CounterRng& rng, std::size_t n) {
  std::vector<double> v(n);
  double s = 0.0;
  for (auto& x : v) s += (x = -std::log(1.0 - rng.uniform()));
  for (auto& x : v) x /= s;
  return v;
}

WordVectors rows(const Eigen::MatrixXd& m) {
  std::vector<std::uint8_t> present(static_cast<std::size_t>(m.rows()), 0);
  for (Eigen::Index i = 0; i < m.rows(); ++i) present[i] = m.row(i).squaredNorm() > 0.0;
  return WordVectors(m, m, 5, present);
}

// Two communities over tokens {0..4} and {5..9}; documents stay inside one.
std::vector<TokenSeq> block_corpus(std::uint64_t seed) {
  CounterRng rng(seed);
  std::vector<TokenSeq> docs(400);
  for (std::size_t d = 0; d < docs.size(); ++d) {
    const TokenId base = d % 2 == 0 ? 0 : 5;
    for (int i = 0; i < 30; ++i) docs[d].push_back(base + static_cast<TokenId>(rng.next_u64() % 5));
  }
  return docs;
}

// ---------------------------------------------------------------- entropy / KL

TEST(Entropy, UniformAndDegenerate) {
  EXPECT_NEAR(entropy(std::vector<double>(4, 0.25)), std::log(4.0), 1e-15);
  EXPECT_EQ(entropy(std::vector<double>{1.0, 0.0, 0.0}), 0.0);
}

TEST(Surprise, SelfIsZeroAndIdentityHolds) {
  CounterRng rng(1);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto p = random_simplex(rng, 2 + trial % 20);
    const auto q = random_simplex(rng, p.size());
    EXPECT_NEAR(surprise(p, p), 0.0, 1e-12);
    double h_pq = 0.0, h_p = 0.0, kl = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      h_pq -= p[i] * std::log(q[i]);
      h_p -= p[i] * std::log(p[i]);
      kl += p[i] * std::log(p[i] / q[i]);
    }
    EXPECT_NEAR(surprise(p, q), kl, 1e-9);
    EXPECT_NEAR(cross_entropy(p, q) - entropy(p), surprise(p, q), 1e-9);
    EXPECT_NEAR(cross_entropy(p, q), h_pq, 1e-9);
    EXPECT_GE(surprise(p, q), 0.0);
  }
}

TEST(Surprise, ZeroInBaseIsFloored) {
  const std::vector<double> p = {0.5, 0.5};
  const std::vector<double> q = {1.0, 0.0};
  const double kl = surprise(p, q);
  EXPECT_TRUE(std::isfinite(kl));
  EXPECT_NEAR(kl, 0.5 * std::log(0.5) + 0.5 * std::log(0.5 / kKlFloor), 1e-9);
  EXPECT_THROW(surprise(p, std::vector<double>{1.0}), InvalidArgument);
}

// ---------------------------------------------------------------- coherence

TEST(Coherence, OrthogonalPairCountsSelfPairs) {
  const WordVectors v = rows(Eigen::MatrixXd::Identity(3, 3));
  const TokenSeq w = {0, 1};
  const auto r = coherence(w, v);
  EXPECT_NEAR(r.value, 0.5, 1e-15);
  EXPECT_EQ(r.used, 2u);
  EXPECT_NEAR(coherence(w, v, true).value, 0.0, 1e-15);
}

TEST(Coherence, IdenticalVectorsGiveOne) {
  Eigen::MatrixXd m(4, 3);
  m.rowwise() = Eigen::RowVector3d(0.3, -1.0, 2.0);
  const WordVectors v = rows(m);
  const TokenSeq w = {0, 1, 2, 3};
  EXPECT_NEAR(coherence(w, v).value, 1.0, 1e-12);
  EXPECT_NEAR(coherence(w, v, true).value, 1.0, 1e-12);
}

TEST(Coherence, ScaleInvariantAndDropsOov) {
  CounterRng rng(2);
  Eigen::MatrixXd m(6, 4);
  for (Eigen::Index i = 0; i < 6; ++i) {
    for (Eigen::Index j = 0; j < 4; ++j) m(i, j) = rng.normal();
  }
  m.row(5).setZero();  // out of vocabulary
  WordVectors v = rows(m);
  const TokenSeq w = {0, 1, 2, 3, 5};
  const auto a = coherence(w, v);
  EXPECT_EQ(a.used, 4u);
  EXPECT_EQ(a.dropped, 1u);
  v.scale(7.5);
  EXPECT_NEAR(coherence(w, v).value, a.value, 1e-12);
  // brute-force mean over all ordered pairs
  double sum = 0.0;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) sum += m.row(i).dot(m.row(j)) / (m.row(i).norm() * m.row(j).norm());
  }
  EXPECT_NEAR(a.value, sum / 16.0, 1e-12);
  EXPECT_THROW(coherence(TokenSeq{0, 5}, v), InvalidArgument);
}

// ---------------------------------------------------------------- dist-n

TEST(DistN, Examples) {
  const std::vector<TokenSeq> abc = {{1, 2, 3}};
  const std::vector<TokenSeq> aaa = {{1, 1, 1}};
  EXPECT_DOUBLE_EQ(dist_n(abc, 1), 100.0);
  EXPECT_NEAR(dist_n(aaa, 1), 33.33, 0.01);
  const std::vector<TokenSeq> twice = {{1, 2, 3}, {1, 2, 3}};
  EXPECT_DOUBLE_EQ(dist_n(twice, 1), dist_n(abc, 1) / 2.0);
  EXPECT_DOUBLE_EQ(dist_n(twice, 3), 50.0);
  EXPECT_DOUBLE_EQ(dist_n(aaa, 2), 50.0);
}

TEST(DistN, NgramsDoNotCrossSamplesAndOrderIsIrrelevant) {
  const std::vector<TokenSeq> a = {{1, 2}, {3, 4}, {2, 3, 5}};
  std::vector<TokenSeq> b = {a[2], a[0], a[1]};
  // bigrams: 12, 34, 23, 35 -> all distinct; a cross-sample 2-3 would repeat
  EXPECT_DOUBLE_EQ(dist_n(a, 2), 100.0);
  for (std::size_t n = 1; n <= 3; ++n) EXPECT_DOUBLE_EQ(dist_n(a, n), dist_n(b, n));
}

TEST(DistN, Errors) {
  EXPECT_THROW(dist_n(std::vector<TokenSeq>{}, 1), InvalidArgument);
  const std::vector<TokenSeq> short_ = {{1, 2}};
  EXPECT_THROW(dist_n(short_, 3), InvalidArgument);
  EXPECT_THROW(dist_n(short_, 4), InvalidArgument);
  EXPECT_THROW(dist_n(short_, 0), InvalidArgument);
}

// ---------------------------------------------------------------- doc similarity

TEST(DocSimilarity, SelfSymmetryAndBlocks) {
  const auto docs = block_corpus(3);
  const auto v = train_word_vectors(docs, 10, {.dim = 4, .window = 3});
  EXPECT_NEAR(doc_similarity(docs[0], docs[0], v), 1.0, 1e-9);
  EXPECT_DOUBLE_EQ(doc_similarity(docs[0], docs[1], v), doc_similarity(docs[1], docs[0], v));
  EXPECT_GT(doc_similarity(docs[0], docs[2], v), doc_similarity(docs[0], docs[1], v));
  EXPECT_THROW(doc_similarity(TokenSeq{}, docs[0], v), InvalidArgument);
}

// ---------------------------------------------------------------- word vectors

TEST(WordVectors, InterchangeableTokensAreClose) {
  // tokens 2 and 3 fill the same slot between identical neighbours
  CounterRng rng(4);
  std::vector<TokenSeq> docs;
  for (int d = 0; d < 300; ++d) {
    TokenSeq doc;
    for (int s = 0; s < 5; ++s) {
      const TokenId a = 4 + static_cast<TokenId>(rng.next_u64() % 3);
      const TokenId b = 7 + static_cast<TokenId>(rng.next_u64() % 3);
      doc.insert(doc.end(), {a, static_cast<TokenId>(2 + rng.next_u64() % 2), b, 0, 1});
    }
    docs.push_back(doc);
  }
  const auto v = train_word_vectors(docs, 10, {.dim = 5, .window = 2});
  const TokenSeq pair = {2, 3};
  EXPECT_GE(coherence(pair, v, true).value, 0.9);
}

TEST(WordVectors, BlockCorpusSeparatesCommunities) {
  const auto v = train_word_vectors(block_corpus(5), 10, {.dim = 4, .window = 3});
  auto cos = [&](TokenId a, TokenId b) {
    return v.vector(a).dot(v.vector(b)) / (v.vector(a).norm() * v.vector(b).norm());
  };
  double within = 0.0, across = 0.0;
  for (TokenId a = 0; a < 5; ++a) {
    for (TokenId b = 0; b < 5; ++b) {
      if (a != b) within += cos(a, b) / 20.0;
      across += cos(a, 5 + b) / 25.0;
    }
  }
  EXPECT_LT(across, within);
}

TEST(WordVectors, FullRankReconstructsPpmi) {
  const auto docs = block_corpus(6);
  const Eigen::MatrixXd ppmi = ppmi_matrix(docs, 10, 3);
  EXPECT_GE(ppmi.minCoeff(), 0.0);
  EXPECT_LE((ppmi - ppmi.transpose()).cwiseAbs().maxCoeff(), 1e-12);
  // cross-community pairs never co-occur
  EXPECT_EQ(ppmi(0, 7), 0.0);
  const auto v = train_word_vectors(docs, 10, {.dim = 10, .window = 3});
  EXPECT_LE((v.vectors() * v.contexts().transpose() - ppmi).cwiseAbs().maxCoeff(), 1e-6);
}

TEST(WordVectors, PpmiMatchesHandCount) {
  // one document "0 1 0 2", window 1: pairs (0,1) x2, (0,2) x1 symmetric
  const std::vector<TokenSeq> docs = {{0, 1, 0, 2}};
  const Eigen::MatrixXd m = ppmi_matrix(docs, 3, 1);
  // counts: c01 = c10 = 2, c02 = c20 = 1, total 6; row sums r0 = 3, r1 = 2, r2 = 1
  EXPECT_NEAR(m(0, 1), std::max(0.0, std::log(2.0 * 6.0 / (3.0 * 2.0))), 1e-12);
  EXPECT_NEAR(m(0, 2), std::max(0.0, std::log(1.0 * 6.0 / (3.0 * 1.0))), 1e-12);
  EXPECT_EQ(m(1, 2), 0.0);
  EXPECT_EQ(m(0, 0), 0.0);
}

TEST(WordVectors, DeterministicSaveLoadAndErrors) {
  const auto docs = block_corpus(7);
  const auto a = train_word_vectors(docs, 12, {.dim = 3, .seed = 9});
  const auto b = train_word_vectors(docs, 12, {.dim = 3, .seed = 9});
  EXPECT_EQ(a.vectors(), b.vectors());
  EXPECT_FALSE(a.has(11));  // never seen
  EXPECT_TRUE(a.has(4));
  EXPECT_EQ(a.method(), "ppmi-svd");
  const auto path = std::filesystem::temp_directory_path() / "tlg_vectors.bin";
  a.save(path);
  const auto back = WordVectors::load(path);
  EXPECT_LE((back.vectors() - a.vectors()).cwiseAbs().maxCoeff(), 1e-5);
  EXPECT_EQ(back.has(11), false);
  EXPECT_EQ(back.window(), a.window());
  std::filesystem::remove(path);

  EXPECT_THROW(train_word_vectors(docs, 12, {.dim = 11}), InvalidArgument);  // 10 present tokens
  EXPECT_THROW(train_word_vectors(docs, 12, {.dim = 1}), InvalidArgument);
  EXPECT_THROW(train_word_vectors(std::vector<TokenSeq>{}, 12, {.dim = 2}), DataError);
  Eigen::MatrixXd bad = Eigen::MatrixXd::Ones(3, 2);
  bad(1, 1) = std::nan("");
  EXPECT_THROW(WordVectors(bad, bad, 5, {1, 1, 1}), DataError);
}

// ---------------------------------------------------------------- report

TEST(EvalReport, AggregatesAndSerializes) {
  const WordVectors v = rows(Eigen::MatrixXd::Identity(4, 4));
  const std::vector<TokenSeq> samples = {{0, 1, 1}, {2, 2, 3}, {3}};
  const auto r = evaluate_samples(samples, v);
  EXPECT_EQ(r.samples, 3u);
  EXPECT_EQ(r.coherence_samples, 2u);  // the single-token sample cannot be scored
  EXPECT_NEAR(r.coherence, 0.5, 1e-12);
  EXPECT_NEAR(r.dist1, 100.0 * 4.0 / 7.0, 1e-9);
  EXPECT_NEAR(r.dist2, 100.0 * 4.0 / 4.0, 1e-9);
  for (double d : {r.dist1, r.dist2, r.dist3}) {
    EXPECT_GE(d, 0.0);
    EXPECT_LE(d, 100.0);
  }
  const auto j = r.to_json();
  EXPECT_EQ(j["samples"], 3);
  EXPECT_NEAR(j["dist1"].get<double>(), r.dist1, 1e-12);
  std::ostringstream csv;
  r.write_csv(csv);
  const std::string text = csv.str();
  EXPECT_NE(text.find("coherence"), std::string::npos);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 2);
}

// ---------------------------------------------------------------- bench

class FakeSource : public LogitSource {
 public:
  std::string name() const override { return "fake"; }
  std::size_t vocab_size() const override { return 256; }
  std::size_t max_context() const override { return 0; }
  TokenId bos_id() const override { return 0; }
  TokenId eos_id() const override { return 1; }

 protected:
  std::vector<double> compute_logits(std::span<const TokenId> context) const override {
    return testing::fake_logits(std::vector<std::int32_t>(context.begin(), context.end()), 256);
  }
};

TEST(Bench, RowsPerLengthAndConfigAndMonotoneTime) {
  const FakeSource src;
  const auto lda = LdaModel(sample_topics(2, 256, 0.3, 1), std::vector<std::uint8_t>(256, 1),
                            Eigen::VectorXd::Constant(2, 0.5), 0.1, 0.1);
  const auto prior = topic_prior(lda, 0);
  DecodeConfig base;
  base.gamma = 0.0;
  DecodeConfig tlg = base;
  tlg.gamma = 5.0;
  const std::vector<BenchConfig> configs = {{"base", base, nullptr}, {"tlg", tlg, &prior}};
  const auto table = bench(src, configs, {20, 400}, TokenSeq{0}, {.runs = 3, .warmup = 1});
  ASSERT_EQ(table.size(), 4u);
  for (const auto& r : table) {
    EXPECT_GT(r.tokens_per_sec, 0.0);
    EXPECT_NEAR(r.tokens_per_sec, static_cast<double>(r.length) / r.seconds, 1e-6 * r.tokens_per_sec);
  }
  for (const char* name : {"base", "tlg"}) {
    double t20 = 0.0, t400 = 0.0;
    for (const auto& r : table) {
      if (r.config != name) continue;
      (r.length == 20 ? t20 : t400) = r.seconds;
    }
    EXPECT_LT(t20, t400) << name;
  }
  std::ostringstream csv;
  write_bench_csv(csv, table);
  const std::string text = csv.str();
  EXPECT_EQ(text.substr(0, text.find('\n')), "length,config,tokens_per_sec");
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 5);
}

}  // namespace
}  // namespace tlg
