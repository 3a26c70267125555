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

#include <ostream>
#include <string>

#include <nlohmann/json.hpp>

#include "tlg/decoding/generate.hpp"

namespace tlg {

class Tokenizer;

// First object: header (config, seed, source, topic, prompt, extra). Then
// one object per step.
nlohmann::json trace_header(const GenerationTrace& trace, const nlohmann::json& extra = {});
nlohmann::json trace_step_json(const TraceStep& step);
void write_trace_jsonl(std::ostream& out, const GenerationTrace& trace,
                       const nlohmann::json& extra = {});

// Generated tokens wrapped as ⟦token|score⟧ with score = exp(topic logprob).
std::string annotate(const GenerationTrace& trace, const Tokenizer& tokenizer);

}  // namespace tlg
