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

#include "tlg/corpus/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>

#include "tlg/common/error.hpp"

namespace tlg {

DocLimit DocLimit::count(std::size_t n) {
  DocLimit d;
  d.value_ = static_cast<double>(n);
  return d;
}

DocLimit DocLimit::fraction(double f) {
  if (!(f > 0.0 && f <= 1.0)) {
    throw InvalidArgument("document-frequency fraction must lie in (0, 1]");
  }
  DocLimit d;
  d.is_fraction_ = true;
  d.value_ = f;
  return d;
}

DocLimit DocLimit::parse(const std::string& text) {
  const bool looks_fractional =
      text.find('.') != std::string::npos || text.find('e') != std::string::npos;
  try {
    std::size_t used = 0;
    if (looks_fractional) {
      const double f = std::stod(text, &used);
      if (used == text.size()) return fraction(f);
    } else {
      const unsigned long long n = std::stoull(text, &used);
      if (used == text.size()) return count(n);
    }
  } catch (const std::logic_error&) {
  }
  throw InvalidArgument("cannot parse document limit '" + text + "'");
}

std::size_t DocLimit::resolve(std::size_t doc_count) const {
  if (!is_fraction_) return static_cast<std::size_t>(value_);
  return static_cast<std::size_t>(std::ceil(value_ * static_cast<double>(doc_count) - 1e-9));
}

std::size_t Corpus::kept_vocab_size() const {
  return static_cast<std::size_t>(std::count(kept_mask.begin(), kept_mask.end(), 1));
}

Corpus filter_corpus(std::span<const TokenSeq> encoded, std::size_t vocab_size,
                     std::size_t min_doc, DocLimit max_doc) {
  if (encoded.empty()) throw DataError("build_corpus: empty document collection");
  Corpus corpus;
  corpus.doc_count = encoded.size();
  corpus.vocab_size = vocab_size;
  corpus.min_doc = min_doc;
  corpus.max_doc = max_doc.resolve(encoded.size());
  if (min_doc > corpus.max_doc) {
    throw InvalidArgument("build_corpus: min_doc " + std::to_string(min_doc) +
                          " exceeds resolved max_doc " + std::to_string(corpus.max_doc));
  }

  corpus.doc_freq.assign(vocab_size, 0);
  std::vector<std::size_t> last_seen(vocab_size, static_cast<std::size_t>(-1));
  for (std::size_t d = 0; d < encoded.size(); ++d) {
    for (TokenId id : encoded[d]) {
      if (id < 0 || static_cast<std::size_t>(id) >= vocab_size) {
        throw DataError("build_corpus: token id " + std::to_string(id) + " outside vocabulary");
      }
      auto& seen = last_seen[static_cast<std::size_t>(id)];
      if (seen != d) {
        seen = d;
        ++corpus.doc_freq[static_cast<std::size_t>(id)];
      }
    }
  }

  corpus.kept_mask.assign(vocab_size, 0);
  for (std::size_t i = 0; i < vocab_size; ++i) {
    const auto df = corpus.doc_freq[i];
    corpus.kept_mask[i] = df >= min_doc && df <= corpus.max_doc ? 1 : 0;
  }

  for (std::size_t d = 0; d < encoded.size(); ++d) {
    TokenSeq doc;
    for (TokenId id : encoded[d]) {
      if (corpus.kept(id)) doc.push_back(id);
    }
    if (doc.empty()) {
      ++corpus.dropped_docs;
      continue;
    }
    corpus.documents.push_back(std::move(doc));
    corpus.source_index.push_back(d);
  }
  if (corpus.documents.empty()) {
    throw DataError("build_corpus: every document is empty after filtering");
  }
  return corpus;
}

std::vector<TokenSeq> encode_all(const Tokenizer& tokenizer, std::span<const std::string> texts) {
  std::vector<TokenSeq> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(tokenizer.encode(t));
  return out;
}

Corpus build_corpus(const Tokenizer& tokenizer, std::span<const std::string> texts,
                    std::size_t min_doc, DocLimit max_doc) {
  const auto encoded = encode_all(tokenizer, texts);
  return filter_corpus(encoded, tokenizer.vocab_size(), min_doc, max_doc);
}

std::vector<std::string> read_corpus_texts(const std::filesystem::path& path) {
  namespace fs = std::filesystem;
  std::vector<std::string> texts;
  if (fs::is_directory(path)) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(path)) {
      if (entry.is_regular_file() && entry.path().extension() == ".txt") {
        files.push_back(entry.path());
      }
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
      std::ifstream in(f, std::ios::binary);
      std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
      if (!text.empty()) texts.push_back(std::move(text));
    }
  } else {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open corpus " + path.string());
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) texts.push_back(std::move(line));
    }
  }
  if (texts.empty()) throw DataError("corpus " + path.string() + " has no documents");
  return texts;
}

TokenDocMatrix token_doc_matrix(const Corpus& corpus) {
  using Triplet = Eigen::Triplet<double, std::int64_t>;
  std::vector<Triplet> triplets;
  for (std::size_t d = 0; d < corpus.documents.size(); ++d) {
    for (TokenId id : corpus.documents[d]) {
      triplets.emplace_back(id, static_cast<std::int64_t>(d), 1.0);
    }
  }
  TokenDocMatrix m;
  m.counts.resize(static_cast<std::int64_t>(corpus.vocab_size),
                  static_cast<std::int64_t>(corpus.documents.size()));
  // Duplicate entries are summed.
  m.counts.setFromTriplets(triplets.begin(), triplets.end());
  m.counts.makeCompressed();
  return m;
}

}  // namespace tlg
