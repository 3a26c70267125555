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

#include <CLI11.hpp>

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tlg/corpus/corpus.hpp"
#include "tlg/corpus/tokenizer.hpp"
#include "tlg/decoding/generate.hpp"
#include "tlg/lm/remote.hpp"
#include "tlg/lm/source.hpp"
#include "tlg/topics/prior.hpp"
#include "tlg/topics/topic_model.hpp"

namespace tlg::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kUsage = 2, kDataError = 3, kRemoteError = 4 };

inline constexpr const char* kVersion = "0.1.0";

struct Command {
  CLI::App* app;
  std::function<int()> run;
};
using Registry = std::vector<Command>;

void register_train(CLI::App& root, Registry& registry);
void register_decode(CLI::App& root, Registry& registry);
void register_reports(CLI::App& root, Registry& registry);

// Config file: a JSON object whose keys are long flag names without the
// dashes. Flat keys apply to the selected subcommand; nested objects name
// subcommands explicitly.
class JsonConfig : public CLI::Config {
 public:
  explicit JsonConfig(const CLI::App* root) : root_(root) {}
  std::string to_config(const CLI::App* app, bool default_also, bool write_description,
                        std::string prefix) const override;
  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override;

 private:
  const CLI::App* root_;
};

// Parent directory of an output path must exist.
CLI::Validator output_path();

struct VocabArgs {
  std::string tokenizer;
  std::string remote;
};
void add_vocab_flags(CLI::App* app, VocabArgs& args);

struct LmArgs {
  std::string kind = "ngram";
  std::string ngram;
  std::string transformer;
  std::size_t max_context = 0;
};
void add_lm_flags(CLI::App* app, LmArgs& args);

struct CorpusArgs {
  std::string corpus;
  std::size_t min_doc = 20;
  std::string max_doc = "0.3";
};
void add_corpus_flags(CLI::App* app, CorpusArgs& args, bool with_filter);

struct PriorArgs {
  std::string topics;
  std::string topic;
  std::string mode = "phi";
  double epsilon = 1e-10;
};
void add_prior_flags(CLI::App* app, PriorArgs& args, bool with_selector);
PriorOptions prior_options(const PriorArgs& args);

struct DecodeArgs {
  DecodeConfig config;
  std::optional<std::uint64_t> seed;
  std::string repetition_mode = "divide";
};
void add_decode_flags(CLI::App* app, DecodeArgs& args);
// Fills in the seed (printing it when it was generated) and validates.
DecodeConfig finish_decode(DecodeArgs& args);

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& seed);

// Tokenizer, logit source and the digests of every model file touched.
class Runtime {
 public:
  void open_vocab(const VocabArgs& args);
  void open_lm(const LmArgs& lm, const VocabArgs& vocab);

  const Tokenizer& tokenizer() const { return *tokenizer_; }
  const LogitSource& source() const;
  std::unique_ptr<TopicModel> load_topics(const std::string& path);
  void record(const std::string& role, const std::string& path);
  const nlohmann::json& models() const { return models_; }

 private:
  void connect(const std::string& address, std::size_t max_context);

  std::unique_ptr<RemoteLm> remote_;
  std::unique_ptr<Tokenizer> tokenizer_;
  std::unique_ptr<LogitSource> local_;
  nlohmann::json models_ = nlohmann::json::object();
};

std::vector<TokenSeq> encode_corpus(const Runtime& rt, const std::string& path);
Corpus filtered_corpus(const Runtime& rt, const CorpusArgs& args);

// Index, or a word that appears among a topic's top ten tokens.
std::size_t resolve_topic(const TopicModel& model, const Tokenizer& tokenizer,
                          const std::string& selector);
std::string describe_topics(const TopicModel& model, const Tokenizer& tokenizer, std::size_t n);
std::string display_token(const Tokenizer& tokenizer, TokenId id);

nlohmann::json run_header(const DecodeConfig& config, const Runtime& rt);

}  // namespace tlg::cli
