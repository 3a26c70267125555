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

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <Eigen/SparseCore>

#include "tlg/common/types.hpp"
#include "tlg/corpus/tokenizer.hpp"

namespace tlg {

// Upper document-frequency bound given either as a document count or as a
// fraction of the corpus; fractions resolve to ceil(f * M).
class DocLimit {
 public:
  static DocLimit count(std::size_t n);
  static DocLimit fraction(double f);
  // "0.3" -> fraction, "333181" -> count.
  static DocLimit parse(const std::string& text);

  std::size_t resolve(std::size_t doc_count) const;
  bool is_fraction() const { return is_fraction_; }
  double value() const { return value_; }

 private:
  bool is_fraction_ = false;
  double value_ = 0.0;
};

struct Corpus {
  // Filtered documents; empty ones are removed.
  std::vector<TokenSeq> documents;
  // For each kept document, its index in the input collection.
  std::vector<std::size_t> source_index;
  std::size_t doc_count = 0;  // M, input documents before dropping
  std::size_t dropped_docs = 0;
  std::size_t vocab_size = 0;
  std::size_t min_doc = 0;
  std::size_t max_doc = 0;  // resolved
  std::vector<std::size_t> doc_freq;  // computed before filtering
  std::vector<std::uint8_t> kept_mask;

  std::size_t kept_vocab_size() const;
  bool kept(TokenId id) const { return kept_mask[static_cast<std::size_t>(id)] != 0; }
};

// Token filter: keep tokens found in at least min_doc and at most max_doc
// documents.
Corpus filter_corpus(std::span<const TokenSeq> encoded, std::size_t vocab_size,
                     std::size_t min_doc, DocLimit max_doc);

Corpus build_corpus(const Tokenizer& tokenizer, std::span<const std::string> texts,
                    std::size_t min_doc, DocLimit max_doc);

std::vector<TokenSeq> encode_all(const Tokenizer& tokenizer, std::span<const std::string> texts);

// One document per non-empty line, or one per .txt file (sorted by name)
// when given a directory.
std::vector<std::string> read_corpus_texts(const std::filesystem::path& path);

// |V| x M occurrence counts.
struct TokenDocMatrix {
  Eigen::SparseMatrix<double, Eigen::ColMajor, std::int64_t> counts;

  std::size_t rows() const { return static_cast<std::size_t>(counts.rows()); }
  std::size_t cols() const { return static_cast<std::size_t>(counts.cols()); }
};

TokenDocMatrix token_doc_matrix(const Corpus& corpus);

}  // namespace tlg
