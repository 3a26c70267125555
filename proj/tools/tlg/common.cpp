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

#include "common.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <iostream>
#include <random>
#include <sstream>

#include "tlg/common/digest.hpp"
#include "tlg/common/error.hpp"
#include "tlg/corpus/bpe.hpp"
#include "tlg/lm/ngram.hpp"
#include "tlg/lm/transformer.hpp"

namespace tlg::cli {
namespace {

std::string scalar_text(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  return v.dump();
}

void flatten(const nlohmann::json& object, std::vector<std::string> parents,
             std::vector<CLI::ConfigItem>& out) {
  for (const auto& [key, value] : object.items()) {
    if (value.is_object()) {
      auto deeper = parents;
      deeper.push_back(key);
      flatten(value, deeper, out);
      continue;
    }
    CLI::ConfigItem item;
    item.parents = parents;
    item.name = key;
    if (value.is_array()) {
      for (const auto& e : value) item.inputs.push_back(scalar_text(e));
    } else {
      item.inputs.push_back(scalar_text(value));
    }
    out.push_back(std::move(item));
  }
}

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

}  // namespace

std::string JsonConfig::to_config(const CLI::App* app, bool default_also, bool, std::string) const {
  nlohmann::json j = nlohmann::json::object();
  for (const CLI::Option* opt : app->get_options()) {
    if (opt->get_lnames().empty() || !opt->get_configurable()) continue;
    const auto& name = opt->get_lnames().front();
    if (opt->count() > 0) {
      const auto& res = opt->results();
      j[name] = res.size() == 1 ? nlohmann::json(res.front()) : nlohmann::json(res);
    } else if (default_also && !opt->get_default_str().empty()) {
      j[name] = opt->get_default_str();
    }
  }
  return j.dump(2) + "\n";
}

std::vector<CLI::ConfigItem> JsonConfig::from_config(std::istream& input) const {
  nlohmann::json j;
  try {
    input >> j;
  } catch (const nlohmann::json::exception& e) {
    throw CLI::ConversionError(std::string("config file is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw CLI::ConversionError("config file must hold a JSON object");
  // Flat keys belong to the deepest selected subcommand.
  std::vector<std::string> path;
  for (const CLI::App* app = root_; !app->get_subcommands().empty();) {
    app = app->get_subcommands().front();
    path.push_back(app->get_name());
  }
  std::vector<CLI::ConfigItem> items;
  flatten(j, path, items);
  return items;
}

CLI::Validator output_path() {
  return CLI::Validator(
      [](std::string& value) -> std::string {
        const auto parent = std::filesystem::path(value).parent_path();
        if (!parent.empty() && !std::filesystem::is_directory(parent)) {
          return "directory " + parent.string() + " does not exist";
        }
        return {};
      },
      "PATH");
}

void add_vocab_flags(CLI::App* app, VocabArgs& args) {
  app->add_option("--tokenizer", args.tokenizer, "BPE model (JSON) from `train bpe`")
      ->check(CLI::ExistingFile);
  app->add_option("--remote", args.remote,
                  "Logit bridge address, tcp://host:port or stdio:<command>; its vocabulary "
                  "replaces --tokenizer")
      ->envname("TLG_REMOTE");
}

void add_lm_flags(CLI::App* app, LmArgs& args) {
  app->add_option("--lm", args.kind, "Logit source")
      ->check(CLI::IsMember({"ngram", "transformer", "remote"}));
  app->add_option("--ngram", args.ngram, "N-gram model from `train ngram`")->check(CLI::ExistingFile);
  app->add_option("--transformer", args.transformer, "Transformer weights from `init-transformer`")
      ->check(CLI::ExistingFile);
  app->add_option("--max-context", args.max_context, "Longest context sent to a remote source (0 = no limit)");
}

void add_corpus_flags(CLI::App* app, CorpusArgs& args, bool with_filter) {
  app->add_option("--corpus", args.corpus, "Text file with one document per line, or a directory of .txt files")
      ->required()
      ->check(CLI::ExistingPath);
  if (!with_filter) return;
  app->add_option("--min-doc", args.min_doc, "Keep tokens found in at least this many documents");
  app->add_option("--max-doc", args.max_doc,
                  "Keep tokens found in at most this many documents (a count, or a fraction in (0, 1])");
}

void add_prior_flags(CLI::App* app, PriorArgs& args, bool with_selector) {
  app->add_option("--topics", args.topics, "Topic model from `train lda` or `train lsi`")
      ->check(CLI::ExistingFile);
  if (with_selector) {
    app->add_option("--topic", args.topic, "Topic index, or a word among the topic's top ten tokens");
  }
  app->add_option("--prior", args.mode,
                  "Per-token prior: phi uses the topic-word weights, inverted uses P(topic | token) (LDA only)")
      ->check(CLI::IsMember({"phi", "inverted"}));
  app->add_option("--epsilon", args.epsilon, "Floor applied before taking the log of a topic score")
      ->check(CLI::PositiveNumber);
}

PriorOptions prior_options(const PriorArgs& args) {
  return {.epsilon = args.epsilon, .bayes_inverted = args.mode == "inverted"};
}

void add_decode_flags(CLI::App* app, DecodeArgs& args) {
  auto& c = args.config;
  app->add_option("--gamma", c.gamma, "Topical strength");
  app->add_option("--threshold", c.threshold, "Apply the prior only where the LM logit exceeds this (-inf = always)");
  app->add_option("--alpha", c.alpha, "Output mapping: 1 softmax, 2 sparsemax, other values entmax");
  app->add_option("--temperature", c.temperature, "Softmax temperature");
  app->add_option("--repetition-penalty", c.repetition_penalty, "Divisor for logits of already generated tokens");
  app->add_option("--repetition-mode", args.repetition_mode,
                  "divide: u / r whatever the sign; sign-aware: negative logits are multiplied by r")
      ->check(CLI::IsMember({"divide", "sign-aware"}));
  app->add_option("--top-p", c.top_p, "Nucleus mass");
  app->add_option("--top-k", c.top_k, "Keep the k most probable tokens (0 = off)");
  app->add_option("--max-tokens", c.max_tokens, "Tokens to generate");
  app->add_option("--seed", args.seed, "Sampling seed; a random one is drawn and printed when omitted");
  app->add_flag("--stop-at-eos,!--no-stop-at-eos", c.stop_at_eos, "Stop when the source emits end-of-sequence");
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& seed) {
  if (seed) return *seed;
  std::random_device rd;
  const std::uint64_t s = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  std::cerr << "seed: " << s << "\n";
  return s;
}

DecodeConfig finish_decode(DecodeArgs& args) {
  args.config.seed = resolve_seed(args.seed);
  args.seed = args.config.seed;
  args.config.repetition_mode =
      args.repetition_mode == "sign-aware" ? RepetitionMode::kSignAware : RepetitionMode::kDivide;
  args.config.validate();
  return args.config;
}

void Runtime::connect(const std::string& address, std::size_t max_context) {
  if (remote_) return;
  remote_ = std::make_unique<RemoteLm>(RemoteEndpoint::parse(address), max_context);
  models_["remote"] = {{"address", address}, {"name", remote_->info().name}, {"vocab_size", remote_->vocab_size()}};
}

void Runtime::open_vocab(const VocabArgs& args) {
  if (!args.tokenizer.empty()) {
    tokenizer_ = std::make_unique<BpeModel>(BpeModel::load(args.tokenizer));
    record("tokenizer", args.tokenizer);
    return;
  }
  if (args.remote.empty()) throw InvalidArgument("need --tokenizer or --remote (or TLG_REMOTE)");
  connect(args.remote, 0);
  const auto& info = remote_->info();
  tokenizer_ = std::make_unique<VocabTokenizer>(remote_->fetch_vocab(),
                                                SpecialIds{info.bos, info.eos, std::nullopt});
}

void Runtime::open_lm(const LmArgs& lm, const VocabArgs& vocab) {
  if (lm.kind == "remote") {
    if (vocab.remote.empty()) throw InvalidArgument("--lm remote needs --remote or TLG_REMOTE");
    connect(vocab.remote, lm.max_context);
    // the bridge vocabulary wins
    open_vocab({.tokenizer = "", .remote = vocab.remote});
    return;
  }
  if (vocab.tokenizer.empty()) throw InvalidArgument("--lm " + lm.kind + " needs --tokenizer");
  open_vocab({.tokenizer = vocab.tokenizer, .remote = ""});
  const auto special = tokenizer_->special();
  if (lm.kind == "ngram") {
    if (lm.ngram.empty()) throw InvalidArgument("--lm ngram needs --ngram");
    local_ = std::make_unique<NgramModel>(NgramModel::load(lm.ngram));
    record("ngram", lm.ngram);
  } else {
    if (lm.transformer.empty()) throw InvalidArgument("--lm transformer needs --transformer");
    local_ = std::make_unique<TransformerLm>(TransformerWeights::load(lm.transformer), special.bos, special.eos);
    record("transformer", lm.transformer);
  }
  if (local_->vocab_size() != tokenizer_->vocab_size()) {
    throw DataError("language model has " + std::to_string(local_->vocab_size()) +
                    " tokens, tokenizer has " + std::to_string(tokenizer_->vocab_size()));
  }
}

const LogitSource& Runtime::source() const {
  if (local_) return *local_;
  if (remote_) return *remote_;
  throw InvalidArgument("no language model loaded");
}

std::unique_ptr<TopicModel> Runtime::load_topics(const std::string& path) {
  auto model = load_topic_model(path);
  record("topics", path);
  if (tokenizer_ && model->vocab_size() != tokenizer_->vocab_size()) {
    throw DataError("topic model covers " + std::to_string(model->vocab_size()) +
                    " tokens, tokenizer has " + std::to_string(tokenizer_->vocab_size()) +
                    "; retrain it on this vocabulary");
  }
  return model;
}

void Runtime::record(const std::string& role, const std::string& path) {
  models_[role] = {{"path", path}, {"digest", file_digest_hex(path)}};
}

std::vector<TokenSeq> encode_corpus(const Runtime& rt, const std::string& path) {
  const auto texts = read_corpus_texts(path);
  return encode_all(rt.tokenizer(), texts);
}

Corpus filtered_corpus(const Runtime& rt, const CorpusArgs& args) {
  const auto encoded = encode_corpus(rt, args.corpus);
  return filter_corpus(encoded, rt.tokenizer().vocab_size(), args.min_doc, DocLimit::parse(args.max_doc));
}

std::string display_token(const Tokenizer& tokenizer, TokenId id) {
  auto text = trim(tokenizer.token(id));
  return text.empty() ? "<space>" : text;
}

std::string describe_topics(const TopicModel& model, const Tokenizer& tokenizer, std::size_t n) {
  std::ostringstream out;
  for (std::size_t k = 0; k < model.num_topics(); ++k) {
    out << "  [" << k << "]";
    for (TokenId t : model.top_tokens(k, n)) out << ' ' << display_token(tokenizer, t);
    out << '\n';
  }
  return out.str();
}

std::size_t resolve_topic(const TopicModel& model, const Tokenizer& tokenizer, const std::string& selector) {
  const auto listing = [&] { return "\navailable topics:\n" + describe_topics(model, tokenizer, 10); };
  if (selector.empty()) throw InvalidArgument("--topic is required with --topics" + listing());
  if (std::all_of(selector.begin(), selector.end(), [](unsigned char c) { return std::isdigit(c); })) {
    const auto k = std::stoul(selector);
    if (k >= model.num_topics()) {
      throw InvalidArgument("topic " + selector + " out of range, model has " +
                            std::to_string(model.num_topics()) + listing());
    }
    return k;
  }
  const std::string want = lower(trim(selector));
  std::optional<std::size_t> best;
  std::size_t best_rank = 0;
  for (std::size_t k = 0; k < model.num_topics(); ++k) {
    const auto top = model.top_tokens(k, 10);
    for (std::size_t r = 0; r < top.size(); ++r) {
      if (lower(display_token(tokenizer, top[r])) != want) continue;
      if (!best || r < best_rank) {
        best = k;
        best_rank = r;
      }
      break;
    }
  }
  if (!best) throw InvalidArgument("no topic has '" + selector + "' among its top ten tokens" + listing());
  return *best;
}

nlohmann::json run_header(const DecodeConfig& config, const Runtime& rt) {
  return {{"tool", std::string("tlg ") + kVersion},
          {"seed", config.seed},
          {"config_digest", digest_hex(config.to_json().dump())},
          {"models", rt.models()}};
}

}  // namespace tlg::cli
