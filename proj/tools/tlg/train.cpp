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

#include <iostream>
#include <memory>

#include "common.hpp"
#include "tlg/common/error.hpp"
#include "tlg/corpus/bpe.hpp"
#include "tlg/lm/ngram.hpp"
#include "tlg/lm/transformer.hpp"
#include "tlg/metrics/word_vectors.hpp"
#include "tlg/topics/lda.hpp"
#include "tlg/topics/lsi.hpp"

namespace tlg::cli {
namespace {

void report_filter(const Corpus& c) {
  std::cerr << "documents: " << c.documents.size() << " of " << c.doc_count << " kept, vocabulary "
            << c.kept_vocab_size() << " of " << c.vocab_size << " tokens (min-doc " << c.min_doc
            << ", max-doc " << c.max_doc << ")\n";
}

void add_out(CLI::App* app, std::string& out, const std::string& what) {
  app->add_option("--out", out, what)->required()->check(output_path());
}

struct BpeArgs {
  CorpusArgs corpus;
  BpeTrainOptions options;
  std::string out;
};

int run_bpe(const BpeArgs& a) {
  const auto texts = read_corpus_texts(a.corpus.corpus);
  const auto model = BpeModel::train(texts, a.options);
  model.save(a.out);
  std::cout << "tokenizer: " << model.vocab_size() << " tokens, " << model.merges().size() << " merges -> "
            << a.out << "\n";
  return kOk;
}

struct LdaArgs {
  CorpusArgs corpus;
  VocabArgs vocab;
  LdaOptions options;
  std::optional<std::uint64_t> seed;
  std::string out;
};

int run_lda(LdaArgs& a) {
  Runtime rt;
  rt.open_vocab(a.vocab);
  const auto corpus = filtered_corpus(rt, a.corpus);
  report_filter(corpus);
  a.options.seed = resolve_seed(a.seed);
  const auto model = train_lda(corpus, a.options);
  model.save(a.out);
  std::cerr << "lda: " << model.iterations << " updates, " << model.passes << " passes, "
            << (model.converged ? "converged" : "iteration limit reached") << ", eta " << model.eta()
            << "\n";
  std::cout << describe_topics(model, rt.tokenizer(), 10);
  return kOk;
}

struct LsiArgs {
  CorpusArgs corpus;
  VocabArgs vocab;
  std::size_t topics = 15;
  SvdOptions svd;
  std::optional<std::uint64_t> seed;
  std::string out;
};

int run_lsi(LsiArgs& a) {
  Runtime rt;
  rt.open_vocab(a.vocab);
  const auto corpus = filtered_corpus(rt, a.corpus);
  report_filter(corpus);
  a.svd.seed = resolve_seed(a.seed);
  const auto model = train_lsi(token_doc_matrix(corpus), a.topics, a.svd, corpus.kept_mask);
  model.save(a.out);
  std::cout << describe_topics(model, rt.tokenizer(), 10);
  return kOk;
}

struct VectorArgs {
  CorpusArgs corpus{.corpus = "", .min_doc = 1, .max_doc = "1.0"};
  VocabArgs vocab;
  WordVectorOptions options;
  std::optional<std::uint64_t> seed;
  std::string out;
};

int run_vectors(VectorArgs& a) {
  Runtime rt;
  rt.open_vocab(a.vocab);
  const auto corpus = filtered_corpus(rt, a.corpus);
  report_filter(corpus);
  a.options.seed = resolve_seed(a.seed);
  const auto vectors = train_word_vectors(corpus.documents, rt.tokenizer().vocab_size(), a.options);
  vectors.save(a.out);
  std::cout << "word vectors: " << vectors.vocab_size() << " x " << vectors.dim() << " -> " << a.out << "\n";
  return kOk;
}

struct NgramArgs {
  CorpusArgs corpus;
  VocabArgs vocab;
  NgramOptions options;
  std::string out;
};

int run_ngram(const NgramArgs& a) {
  Runtime rt;
  rt.open_vocab(a.vocab);
  const auto docs = encode_corpus(rt, a.corpus.corpus);
  const auto special = rt.tokenizer().special();
  const auto model = NgramModel::train(docs, rt.tokenizer().vocab_size(), special.bos, special.eos, a.options);
  model.save(a.out);
  std::cout << "ngram: order " << model.order() << ", training perplexity " << model.perplexity(docs)
            << " -> " << a.out << "\n";
  return kOk;
}

struct TransformerArgs {
  VocabArgs vocab;
  TransformerConfig config{.vocab_size = 0, .d_model = 64, .n_heads = 4, .n_layers = 2, .d_ff = 256,
                           .max_len = 128};
  double scale = 0.2;
  std::optional<std::uint64_t> seed;
  std::string out;
};

int run_transformer(TransformerArgs& a) {
  Runtime rt;
  rt.open_vocab(a.vocab);
  a.config.vocab_size = rt.tokenizer().vocab_size();
  const auto weights = TransformerWeights::random(a.config, resolve_seed(a.seed), a.scale);
  weights.save(a.out);
  std::cout << "transformer: vocab " << a.config.vocab_size << ", d_model " << a.config.d_model << ", "
            << a.config.n_layers << " layers -> " << a.out << "\n";
  return kOk;
}

}  // namespace

void register_train(CLI::App& root, Registry& registry) {
  auto* train = root.add_subcommand("train", "Fit a tokenizer, topic model, word vectors or n-gram LM");
  train->require_subcommand(1);

  {
    auto a = std::make_shared<BpeArgs>();
    auto* c = train->add_subcommand("bpe", "Train a byte-pair tokenizer");
    add_corpus_flags(c, a->corpus, false);
    c->add_option("--vocab", a->options.vocab_size, "Target vocabulary size, specials included")
        ->check(CLI::Range(4, 1 << 20));
    c->add_option("--threads", a->options.threads, "Pair-counting threads")->check(CLI::Range(1, 256));
    add_out(c, a->out, "Tokenizer JSON");
    registry.push_back({c, [a] { return run_bpe(*a); }});
  }
  {
    auto a = std::make_shared<LdaArgs>();
    auto* c = train->add_subcommand("lda", "Train an LDA topic model (online variational Bayes)");
    add_corpus_flags(c, a->corpus, true);
    add_vocab_flags(c, a->vocab);
    auto& o = a->options;
    c->add_option("--topics", o.num_topics, "Number of topics")->check(CLI::PositiveNumber);
    c->add_option("--alpha", o.alpha, "Document-topic prior")->check(CLI::PositiveNumber);
    c->add_option("--eta", o.eta, "Topic-token prior (<= 0: 1 / topics)");
    c->add_flag("--learn-eta", o.learn_eta, "Re-estimate eta after each update");
    c->add_option("--batch-size", o.batch_size, "Documents per minibatch")->check(CLI::PositiveNumber);
    c->add_option("--iterations", o.max_iterations, "Maximum minibatch updates")->check(CLI::PositiveNumber);
    c->add_option("--tau0", o.tau0, "Learning-rate delay")->check(CLI::NonNegativeNumber);
    c->add_option("--kappa", o.kappa, "Learning-rate decay")->check(CLI::Range(0.5, 1.0));
    c->add_option("--seed", a->seed, "Seed; drawn and printed when omitted");
    add_out(c, a->out, "Topic model JSON");
    registry.push_back({c, [a] { return run_lda(*a); }});
  }
  {
    auto a = std::make_shared<LsiArgs>();
    auto* c = train->add_subcommand("lsi", "Train an LSI topic model (randomized truncated SVD)");
    add_corpus_flags(c, a->corpus, true);
    add_vocab_flags(c, a->vocab);
    c->add_option("--topics", a->topics, "Number of singular vectors")->check(CLI::PositiveNumber);
    c->add_option("--oversample", a->svd.oversample, "Extra sketch columns");
    c->add_option("--power-iterations", a->svd.power_iterations, "Subspace iterations");
    c->add_option("--seed", a->seed, "Seed; drawn and printed when omitted");
    add_out(c, a->out, "Topic model JSON");
    registry.push_back({c, [a] { return run_lsi(*a); }});
  }
  {
    auto a = std::make_shared<VectorArgs>();
    auto* c = train->add_subcommand("vectors", "Train PPMI + SVD word vectors for coherence");
    add_corpus_flags(c, a->corpus, true);
    add_vocab_flags(c, a->vocab);
    c->add_option("--dim", a->options.dim, "Vector dimension")->check(CLI::PositiveNumber);
    c->add_option("--window", a->options.window, "Co-occurrence half-window")->check(CLI::PositiveNumber);
    c->add_option("--power-iterations", a->options.power_iterations, "Subspace iterations");
    c->add_option("--seed", a->seed, "Seed; drawn and printed when omitted");
    add_out(c, a->out, "Word vectors file");
    registry.push_back({c, [a] { return run_vectors(*a); }});
  }
  {
    auto a = std::make_shared<NgramArgs>();
    auto* c = train->add_subcommand("ngram", "Train an interpolated Kneser-Ney n-gram LM");
    add_corpus_flags(c, a->corpus, false);
    add_vocab_flags(c, a->vocab);
    c->add_option("--order", a->options.order, "N-gram order")->check(CLI::Range(1, 5));
    c->add_option("--discount", a->options.discount, "Fixed discount in (0, 1); 0 estimates per order");
    add_out(c, a->out, "N-gram model JSON");
    registry.push_back({c, [a] { return run_ngram(*a); }});
  }
  {
    auto a = std::make_shared<TransformerArgs>();
    auto* c = root.add_subcommand("init-transformer", "Write randomly initialized transformer weights");
    add_vocab_flags(c, a->vocab);
    c->add_option("--d-model", a->config.d_model, "Model width")->check(CLI::PositiveNumber);
    c->add_option("--heads", a->config.n_heads, "Attention heads (must divide d-model)")
        ->check(CLI::PositiveNumber);
    c->add_option("--layers", a->config.n_layers, "Blocks")->check(CLI::PositiveNumber);
    c->add_option("--d-ff", a->config.d_ff, "Feed-forward width")->check(CLI::PositiveNumber);
    c->add_option("--max-len", a->config.max_len, "Longest context")->check(CLI::PositiveNumber);
    c->add_option("--scale", a->scale, "Weight standard deviation")->check(CLI::PositiveNumber);
    c->add_option("--seed", a->seed, "Seed; drawn and printed when omitted");
    add_out(c, a->out, "Weights file");
    registry.push_back({c, [a] { return run_transformer(*a); }});
  }
}

}  // namespace tlg::cli
