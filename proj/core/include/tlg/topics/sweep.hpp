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

#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "tlg/corpus/corpus.hpp"
#include "tlg/topics/lda.hpp"
#include "tlg/topics/svd.hpp"
#include "tlg/topics/topic_model.hpp"

namespace tlg {

class WordVectors;

struct SweepCell {
  std::size_t min_doc = 20;
  DocLimit max_doc = DocLimit::fraction(0.3);
  std::size_t num_topics = 8;
};

struct SweepRow {
  SweepCell cell;
  std::size_t max_doc_resolved = 0;
  std::optional<double> coherence;
  std::string error;
};

struct SweepOptions {
  TopicKind kind = TopicKind::kLda;
  LdaOptions lda;
  SvdOptions svd;
  std::size_t top_n = 10;
  unsigned jobs = 1;
};

// Trains one model per cell and scores it by the mean coherence of each
// topic's top tokens. Rows come back sorted by coherence, best first;
// failed cells follow with their error text.
std::vector<SweepRow> sweep(std::span<const TokenSeq> encoded, std::size_t vocab_size,
                            std::span<const SweepCell> grid, const WordVectors& vectors,
                            const SweepOptions& options);

// Header: min_doc,max_doc,K,coherence
void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows);

}  // namespace tlg
