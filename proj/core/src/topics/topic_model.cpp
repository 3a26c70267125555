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

#include "tlg/topics/topic_model.hpp"

#include <algorithm>
#include <numeric>

#include "tlg/common/blob_io.hpp"
#include "tlg/common/error.hpp"
#include "tlg/topics/lda.hpp"
#include "tlg/topics/lsi.hpp"

namespace tlg {

std::string to_string(TopicKind kind) { return kind == TopicKind::kLda ? "lda" : "lsi"; }

TopicKind parse_topic_kind(const std::string& text) {
  if (text == "lda") return TopicKind::kLda;
  if (text == "lsi") return TopicKind::kLsi;
  throw InvalidArgument("unknown topic model kind '" + text + "' (expected lda or lsi)");
}

std::vector<TokenId> TopicModel::top_tokens(std::size_t topic, std::size_t n) const {
  const auto scores = topic_scores(topic);
  const auto& mask = kept_mask();
  std::vector<TokenId> ids;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (mask[i]) ids.push_back(static_cast<TokenId>(i));
  }
  const std::size_t m = std::min(n, ids.size());
  std::partial_sort(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(m), ids.end(),
                    [&](TokenId a, TokenId b) {
                      const double sa = scores[static_cast<std::size_t>(a)];
                      const double sb = scores[static_cast<std::size_t>(b)];
                      return sa != sb ? sa > sb : a < b;
                    });
  ids.resize(m);
  return ids;
}

std::unique_ptr<TopicModel> load_topic_model(const std::filesystem::path& path) {
  const auto file = read_tensor_file(path);
  const auto kind = parse_topic_kind(file.header.value("kind", std::string()));
  if (kind == TopicKind::kLda) return std::make_unique<LdaModel>(LdaModel::load(path));
  return std::make_unique<LsiModel>(LsiModel::load(path));
}

}  // namespace tlg
