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

#include "tlg/corpus/tokenizer.hpp"

#include <cctype>

namespace tlg {

bool Tokenizer::is_special(TokenId id) const {
  const auto s = special();
  return id == s.bos || id == s.eos || (s.unk && id == *s.unk);
}

namespace {

enum class CharClass { kSpace, kWord, kPunct };

CharClass classify(unsigned char c) {
  if (std::isspace(c)) return CharClass::kSpace;
  // Bytes of multi-byte UTF-8 sequences count as word characters.
  if (c >= 0x80 || std::isalnum(c)) return CharClass::kWord;
  return CharClass::kPunct;
}

std::size_t utf8_length(unsigned char lead) {
  if (lead < 0x80) return 1;
  if ((lead >> 5) == 0x6) return 2;
  if ((lead >> 4) == 0xe) return 3;
  if ((lead >> 3) == 0x1e) return 4;
  return 0;
}

}  // namespace

std::vector<std::string_view> pretokenize(std::string_view text) {
  std::vector<std::string_view> chunks;
  std::size_t start = 0;
  CharClass run = CharClass::kSpace;
  bool in_run = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const CharClass c = classify(static_cast<unsigned char>(text[i]));
    bool split = false;
    if (c == CharClass::kSpace) {
      split = true;
    } else if (in_run && c != run) {
      split = true;
    }
    if (split && i > start) {
      chunks.push_back(text.substr(start, i - start));
      start = i;
    }
    if (c == CharClass::kSpace) {
      in_run = false;
    } else {
      run = c;
      in_run = true;
    }
  }
  if (start < text.size()) chunks.push_back(text.substr(start));
  return chunks;
}

std::vector<std::string_view> utf8_chars(std::string_view text) {
  std::vector<std::string_view> out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    std::size_t len = utf8_length(static_cast<unsigned char>(text[i]));
    if (len == 0 || i + len > text.size()) {
      len = 1;
    } else {
      for (std::size_t k = 1; k < len; ++k) {
        if ((static_cast<unsigned char>(text[i + k]) >> 6) != 0x2) {
          len = 1;
          break;
        }
      }
    }
    out.push_back(text.substr(i, len));
    i += len;
  }
  return out;
}

}  // namespace tlg
