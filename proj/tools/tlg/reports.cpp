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

#include "common.hpp"
#include "tlg/common/error.hpp"
#include "tlg/metrics/report.hpp"
#include "tlg/metrics/word_vectors.hpp"
#include "tlg/topics/sweep.hpp"

namespace tlg::cli {
namespace {

struct EvalArgs {
  std::string samples;
  VocabArgs vocab;
  std::string vectors;
  bool exclude_self = false;
  std::string json_out;
  std::string csv_out;
};

int run_eval(const EvalArgs& a) {
  Runtime rt;
  rt.open_vocab(a.vocab);
  const auto vectors = WordVectors::load(a.vectors);
  if (vectors.vocab_size() != rt.tokenizer().vocab_size()) {
    throw DataError("word vectors cover " + std::to_string(vectors.vocab_size()) + " tokens, tokenizer has " +
                    std::to_string(rt.tokenizer().vocab_size()));
  }
  const auto samples = encode_corpus(rt, a.samples);
  const auto report = evaluate_samples(samples, vectors, a.exclude_self);
  const auto json = report.to_json().dump(2);
  if (a.json_out.empty()) {
    std::cout << json << "\n";
  } else {
    std::ofstream(a.json_out) << json << "\n";
  }
  if (!a.csv_out.empty()) {
    std::ofstream out(a.csv_out);
    report.write_csv(out);
  }
  return kOk;
}

struct SweepArgs {
  std::string corpus;
  VocabArgs vocab;
  std::string vectors;
  std::vector<std::size_t> min_doc{20};
  std::vector<std::string> max_doc{"0.3"};
  std::vector<std::size_t> topics{8};
  std::string kind = "lda";
  SweepOptions options;
  std::optional<std::uint64_t> seed;
  std::string out;
};

int run_sweep(SweepArgs& a) {
  Runtime rt;
  rt.open_vocab(a.vocab);
  const auto vectors = WordVectors::load(a.vectors);
  const auto encoded = encode_corpus(rt, a.corpus);
  std::vector<SweepCell> grid;
  for (auto lo : a.min_doc) {
    for (const auto& hi : a.max_doc) {
      for (auto k : a.topics) grid.push_back({.min_doc = lo, .max_doc = DocLimit::parse(hi), .num_topics = k});
    }
  }
  a.options.kind = parse_topic_kind(a.kind);
  a.options.lda.seed = a.options.svd.seed = resolve_seed(a.seed);
  const auto rows = sweep(encoded, rt.tokenizer().vocab_size(), grid, vectors, a.options);
  if (a.out.empty()) {
    write_sweep_csv(std::cout, rows);
  } else {
    std::ofstream out(a.out);
    write_sweep_csv(out, rows);
  }
  std::size_t ok = 0;
  for (const auto& r : rows) {
    if (r.coherence) {
      ++ok;
    } else {
      std::cerr << "cell min-doc " << r.cell.min_doc << " max-doc " << r.max_doc_resolved << " topics "
                << r.cell.num_topics << " failed: " << r.error << "\n";
    }
  }
  return ok > 0 ? kOk : kDataError;
}

}  // namespace

void register_reports(CLI::App& root, Registry& registry) {
  {
    auto a = std::make_shared<EvalArgs>();
    auto* c = root.add_subcommand("eval", "Coherence and distinct-n of generated samples");
    c->add_option("--samples", a->samples, "Text file, one sample per line")->required()->check(CLI::ExistingFile);
    add_vocab_flags(c, a->vocab);
    c->add_option("--vectors", a->vectors, "Word vectors from `train vectors`")
        ->required()
        ->check(CLI::ExistingFile);
    c->add_flag("--exclude-self", a->exclude_self, "Leave same-word pairs out of coherence");
    c->add_option("--json-out", a->json_out, "Write the JSON report here instead of stdout")->check(output_path());
    c->add_option("--csv-out", a->csv_out, "Also write a CSV row")->check(output_path());
    registry.push_back({c, [a] { return run_eval(*a); }});
  }
  {
    auto a = std::make_shared<SweepArgs>();
    auto* c = root.add_subcommand("sweep", "Grid search of frequency filters and topic counts by coherence");
    c->add_option("--corpus", a->corpus, "Corpus file or directory")->required()->check(CLI::ExistingPath);
    add_vocab_flags(c, a->vocab);
    c->add_option("--vectors", a->vectors, "Word vectors from `train vectors`")
        ->required()
        ->check(CLI::ExistingFile);
    c->add_option("--min-doc", a->min_doc, "Minimum document frequencies to try")->delimiter(',');
    c->add_option("--max-doc", a->max_doc, "Maximum document frequencies to try")->delimiter(',');
    c->add_option("--topics", a->topics, "Topic counts to try")->delimiter(',');
    c->add_option("--kind", a->kind, "Topic model")->check(CLI::IsMember({"lda", "lsi"}));
    c->add_option("--top-n", a->options.top_n, "Top tokens per topic scored")->check(CLI::PositiveNumber);
    c->add_option("--iterations", a->options.lda.max_iterations, "LDA minibatch updates per cell")
        ->check(CLI::PositiveNumber);
    c->add_option("--batch-size", a->options.lda.batch_size, "LDA minibatch size")->check(CLI::PositiveNumber);
    c->add_option("--jobs", a->options.jobs, "Cells trained in parallel")->check(CLI::Range(1, 256));
    c->add_option("--seed", a->seed, "Seed; drawn and printed when omitted");
    c->add_option("--out", a->out, "CSV path (default stdout)")->check(output_path());
    registry.push_back({c, [a] { return run_sweep(*a); }});
  }
}

}  // namespace tlg::cli
