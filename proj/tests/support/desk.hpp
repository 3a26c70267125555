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

#include <memory>
#include <string>
#include <vector>

#include "tlg/corpus/bpe.hpp"
#include "tlg/corpus/corpus.hpp"
#include "tlg/lm/ngram.hpp"
#include "tlg/metrics/word_vectors.hpp"
#include "tlg/topics/lda.hpp"

namespace tlg::testing {

// Everything trained on the bundled desk corpus, built once per process.
struct Desk {
  std::vector<std::string> texts;
  BpeModel bpe;
  std::vector<TokenSeq> encoded;
  Corpus corpus;
  std::unique_ptr<NgramModel> ngram;
  std::unique_ptr<LdaModel> lda;
  WordVectors vectors;
  TokenSeq prompt;  // "The issue is"
};

const Desk& desk();

std::string data_path(const std::string& name);

}  // namespace tlg::testing
