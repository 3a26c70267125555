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

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "common.hpp"
#include "tlg/common/error.hpp"
#include "tlg/decoding/trace_io.hpp"
#include "tlg/metrics/bench.hpp"
#include "tlg/metrics/measures.hpp"
#include "tlg/metrics/word_vectors.hpp"
#include "tlg/topics/lda.hpp"

namespace tlg::cli {
namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write " + path);
  return out;
}

std::string full_text(const Tokenizer& tok, const GenerationTrace& trace) {
  TokenSeq all = trace.prompt;
  all.insert(all.end(), trace.tokens.begin(), trace.tokens.end());
  return tok.decode(all);
}

// A failed source leaves a partial trace; it is still written out.
int finish_trace(const GenerationTrace& trace) {
  if (!trace.error) return kOk;
  std::cerr << "error: language model failed after " << trace.tokens.size() << " tokens: " << *trace.error
            << "\n";
  return kRemoteError;
}

struct GenerateArgs {
  LmArgs lm;
  VocabArgs vocab;
  PriorArgs prior;
  DecodeArgs decode;
  std::string prompt = "The issue is";
  std::size_t samples = 1;
  std::string trace_out;
  bool annotate = false;
};

int run_generate(GenerateArgs& a) {
  Runtime rt;
  rt.open_lm(a.lm, a.vocab);
  auto config = finish_decode(a.decode);
  std::optional<TopicPrior> prior;
  nlohmann::json extra = nlohmann::json::object();
  if (!a.prior.topics.empty()) {
    const auto model = rt.load_topics(a.prior.topics);
    const auto topic = resolve_topic(*model, rt.tokenizer(), a.prior.topic);
    prior = topic_prior(*model, topic, prior_options(a.prior));
    extra["prior"] = a.prior.mode;
    extra["topic_words"] = nlohmann::json::array();
    for (TokenId t : model->top_tokens(topic, 10)) extra["topic_words"].push_back(display_token(rt.tokenizer(), t));
    std::cerr << "topic " << topic << ":";
    for (const auto& w : extra["topic_words"]) std::cerr << ' ' << w.get<std::string>();
    std::cerr << "\n";
  } else if (!a.prior.topic.empty()) {
    throw InvalidArgument("--topic needs --topics");
  }
  const auto prompt = rt.tokenizer().encode(a.prompt);
  std::ofstream trace_file;
  if (!a.trace_out.empty()) trace_file = open_out(a.trace_out);

  for (std::size_t s = 0; s < a.samples; ++s) {
    auto cfg = config;
    cfg.seed = config.seed + s;
    const auto trace = generate(rt.source(), prior ? &*prior : nullptr, cfg, prompt, &rt.tokenizer());
    if (trace_file.is_open()) {
      auto header = run_header(cfg, rt);
      header.update(extra);
      write_trace_jsonl(trace_file, trace, header);
    }
    std::cout << (a.annotate ? annotate(trace, rt.tokenizer()) : full_text(rt.tokenizer(), trace)) << "\n";
    if (const int code = finish_trace(trace); code != kOk) return code;
  }
  return kOk;
}

struct SimulateArgs {
  LmArgs lm;
  VocabArgs vocab;
  PriorArgs prior;
  DecodeArgs decode;
  std::string doc;
  std::string prompt;
  std::string vectors;
  std::string trace_out;
  bool literal_phi = false;
  const CLI::App* app = nullptr;
};

int run_simulate(SimulateArgs& a) {
  if (a.prior.topics.empty()) throw InvalidArgument("simulate needs --topics (an LDA model)");
  Runtime rt;
  rt.open_lm(a.lm, a.vocab);
  a.decode.config.literal_phi = a.literal_phi;
  auto config = finish_decode(a.decode);
  const auto model = rt.load_topics(a.prior.topics);
  const auto* lda = dynamic_cast<const LdaModel*>(model.get());
  if (!lda) throw InvalidArgument("simulate needs an LDA topic model");

  std::ifstream in(a.doc);
  std::stringstream buf;
  buf << in.rdbuf();
  const auto doc = rt.tokenizer().encode(buf.str());
  const auto theta = infer_doc_topics(*lda, doc);
  const std::size_t length = a.app->count("--max-tokens") > 0 ? config.max_tokens : doc.size();
  config.max_tokens = length;

  std::cerr << "theta:";
  for (double t : theta) std::cerr << ' ' << t;
  std::cerr << "\nlength: " << length << "\n";

  const auto prompt = rt.tokenizer().encode(a.prompt);
  const auto trace = simulate_document(rt.source(), *lda, theta, config, prompt, length,
                                       prior_options(a.prior), &rt.tokenizer());
  if (!a.trace_out.empty()) {
    auto out = open_out(a.trace_out);
    auto header = run_header(config, rt);
    header["theta"] = theta;
    header["doc"] = a.doc;
    write_trace_jsonl(out, trace, header);
  }
  std::cout << full_text(rt.tokenizer(), trace) << "\n";
  if (const int code = finish_trace(trace); code != kOk) return code;

  if (!a.vectors.empty()) {
    const auto vectors = WordVectors::load(a.vectors);
    const auto base = generate(rt.source(), nullptr, config, prompt, &rt.tokenizer());
    if (const int code = finish_trace(base); code != kOk) return code;
    const nlohmann::json sim = {{"similarity_simulated", doc_similarity(trace.tokens, doc, vectors)},
                                {"similarity_base", doc_similarity(base.tokens, doc, vectors)}};
    std::cerr << sim.dump() << "\n";
  }
  return kOk;
}

struct BenchArgs {
  LmArgs lm;
  VocabArgs vocab;
  PriorArgs prior;
  DecodeArgs decode;
  std::vector<std::size_t> lengths{50, 100, 200, 400};
  BenchOptions options;
  std::string prompt = "The issue is";
  std::string out;
};

int run_bench(BenchArgs& a) {
  Runtime rt;
  rt.open_lm(a.lm, a.vocab);
  const auto config = finish_decode(a.decode);
  std::vector<BenchConfig> configs;
  auto base = config;
  base.gamma = 0.0;
  configs.push_back({.name = "base", .decode = base, .prior = nullptr});
  std::optional<TopicPrior> prior;
  if (!a.prior.topics.empty()) {
    const auto model = rt.load_topics(a.prior.topics);
    prior = topic_prior(*model, resolve_topic(*model, rt.tokenizer(), a.prior.topic), prior_options(a.prior));
    configs.push_back({.name = "tlg", .decode = config, .prior = &*prior});
  }
  const auto prompt = rt.tokenizer().encode(a.prompt);
  const auto rows = bench(rt.source(), configs, a.lengths, prompt, a.options);
  if (a.out.empty()) {
    write_bench_csv(std::cout, rows);
  } else {
    auto out = open_out(a.out);
    write_bench_csv(out, rows);
  }
  return kOk;
}

}  // namespace

void register_decode(CLI::App& root, Registry& registry) {
  {
    auto a = std::make_shared<GenerateArgs>();
    auto* c = root.add_subcommand("generate", "Generate text steered toward a topic");
    add_lm_flags(c, a->lm);
    add_vocab_flags(c, a->vocab);
    add_prior_flags(c, a->prior, true);
    add_decode_flags(c, a->decode);
    c->add_option("--prompt", a->prompt, "Text to continue");
    c->add_option("--samples", a->samples, "Samples to draw; sample i uses seed + i")->check(CLI::PositiveNumber);
    c->add_option("--trace-out", a->trace_out, "Write a JSONL trace (header, then one line per step)")
        ->check(output_path());
    c->add_flag("--annotate", a->annotate, "Mark each generated token with its topic probability");
    registry.push_back({c, [a] { return run_generate(*a); }});
  }
  {
    auto a = std::make_shared<SimulateArgs>();
    // a simulated document runs to the source document's length
    a->decode.config.stop_at_eos = false;
    auto* c = root.add_subcommand("simulate", "Generate a document following another document's topic mixture");
    add_lm_flags(c, a->lm);
    add_vocab_flags(c, a->vocab);
    add_prior_flags(c, a->prior, false);
    add_decode_flags(c, a->decode);
    c->add_option("--doc", a->doc, "Source document (plain text)")->required()->check(CLI::ExistingFile);
    c->add_option("--prompt", a->prompt, "Text to start from (empty: begin-of-sequence)");
    c->add_option("--vectors", a->vectors, "Word vectors; reports similarity to the source document")
        ->check(CLI::ExistingFile);
    c->add_option("--trace-out", a->trace_out, "Write a JSONL trace")->check(output_path());
    c->add_flag("--literal-phi", a->literal_phi, "Add gamma * phi instead of gamma * log phi");
    a->app = c;
    registry.push_back({c, [a] { return run_simulate(*a); }});
  }
  {
    auto a = std::make_shared<BenchArgs>();
    auto* c = root.add_subcommand("bench", "Tokens per second of base and topical decoding");
    add_lm_flags(c, a->lm);
    add_vocab_flags(c, a->vocab);
    add_prior_flags(c, a->prior, true);
    add_decode_flags(c, a->decode);
    c->add_option("--lengths", a->lengths, "Generation lengths")->delimiter(',');
    c->add_option("--runs", a->options.runs, "Timed runs per cell (median reported)")->check(CLI::PositiveNumber);
    c->add_option("--warmup", a->options.warmup, "Untimed runs per cell");
    c->add_option("--prompt", a->prompt, "Text to continue");
    c->add_option("--out", a->out, "CSV path (default stdout)")->check(output_path());
    registry.push_back({c, [a] { return run_bench(*a); }});
  }
}

}  // namespace tlg::cli
