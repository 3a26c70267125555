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

#include "tlg/topics/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <memory>
#include <thread>

#include "tlg/common/error.hpp"
#include "tlg/metrics/measures.hpp"
#include "tlg/metrics/word_vectors.hpp"
#include "tlg/topics/lsi.hpp"

namespace tlg {

namespace {

SweepRow run_cell(std::span<const TokenSeq> encoded, std::size_t vocab_size, const SweepCell& cell,
                  const WordVectors& vectors, const SweepOptions& options) {
  SweepRow row;
  row.cell = cell;
  row.max_doc_resolved = cell.max_doc.resolve(encoded.size());
  try {
    const Corpus corpus = filter_corpus(encoded, vocab_size, cell.min_doc, cell.max_doc);
    std::unique_ptr<TopicModel> model;
    if (options.kind == TopicKind::kLda) {
      LdaOptions lda = options.lda;
      lda.num_topics = cell.num_topics;
      model = std::make_unique<LdaModel>(train_lda(corpus, lda));
    } else {
      model = std::make_unique<LsiModel>(
          train_lsi(token_doc_matrix(corpus), cell.num_topics, options.svd, corpus.kept_mask));
    }
    double total = 0.0;
    std::size_t scored = 0;
    for (std::size_t j = 0; j < model->num_topics(); ++j) {
      const auto top = model->top_tokens(j, options.top_n);
      try {
        total += coherence(top, vectors).value;
        ++scored;
      } catch (const InvalidArgument&) {
        // fewer than two top tokens have vectors
      }
    }
    if (scored == 0) {
      row.error = "no topic has two in-vocabulary top tokens";
    } else {
      row.coherence = total / static_cast<double>(scored);
    }
  } catch (const Error& e) {
    row.error = e.what();
  }
  return row;
}

}  // namespace

std::vector<SweepRow> sweep(std::span<const TokenSeq> encoded, std::size_t vocab_size,
                            std::span<const SweepCell> grid, const WordVectors& vectors,
                            const SweepOptions& options) {
  std::vector<SweepRow> rows(grid.size());
  const unsigned jobs = std::max(1u, std::min<unsigned>(options.jobs, static_cast<unsigned>(grid.size())));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < grid.size(); i = next++) {
      rows[i] = run_cell(encoded, vocab_size, grid[i], vectors, options);
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }
  // best coherence first, failed cells last, grid order among ties
  std::stable_sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
    if (a.coherence.has_value() != b.coherence.has_value()) return a.coherence.has_value();
    return a.coherence && *a.coherence > *b.coherence;
  });
  return rows;
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows) {
  out << "min_doc,max_doc,K,coherence\n";
  for (const auto& r : rows) {
    out << r.cell.min_doc << ',' << r.max_doc_resolved << ',' << r.cell.num_topics << ',';
    if (r.coherence) out << *r.coherence;
    out << '\n';
  }
}

}  // namespace tlg
