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

#include "tlg/decoding/trace_io.hpp"

#include <cmath>
#include <cstdio>

#include "tlg/corpus/tokenizer.hpp"

namespace tlg {

nlohmann::json trace_header(const GenerationTrace& trace, const nlohmann::json& extra) {
  nlohmann::json h = {
      {"type", "header"},
      {"source", trace.source},
      {"config", trace.config.to_json()},
      {"prompt", trace.prompt},
      {"generated", trace.tokens.size()},
      {"stopped_at_eos", trace.stopped_at_eos},
  };
  h["topic"] = trace.topic ? nlohmann::json(*trace.topic) : nlohmann::json(nullptr);
  if (trace.error) h["error"] = *trace.error;
  if (extra.is_object()) {
    for (const auto& [k, v] : extra.items()) h[k] = v;
  }
  return h;
}

nlohmann::json trace_step_json(const TraceStep& step) {
  nlohmann::json top = nlohmann::json::array();
  for (const auto& c : step.top) top.push_back({{"id", c.id}, {"prob", c.prob}});
  nlohmann::json j = {
      {"step", step.step},
      {"token", step.token},
      {"text", step.text},
      {"base_entropy", step.base_entropy},
      {"fused_entropy", step.fused_entropy},
      {"surprise", step.surprise},
      {"topic_logprob", step.topic_logprob},
      {"topic_score", step.topic_score},
      {"top", top},
  };
  if (step.topic) j["topic"] = *step.topic;
  return j;
}

void write_trace_jsonl(std::ostream& out, const GenerationTrace& trace, const nlohmann::json& extra) {
  out << trace_header(trace, extra).dump() << '\n';
  for (const auto& s : trace.steps) out << trace_step_json(s).dump() << '\n';
}

std::string annotate(const GenerationTrace& trace, const Tokenizer& tokenizer) {
  std::string out = tokenizer.decode(trace.prompt);
  char buf[32];
  for (const auto& s : trace.steps) {
    if (tokenizer.is_special(s.token)) continue;
    std::snprintf(buf, sizeof buf, "%.3f", std::exp(s.topic_logprob));
    out += "⟦" + tokenizer.token(s.token) + "|" + buf + "⟧";
  }
  return out;
}

}  // namespace tlg
