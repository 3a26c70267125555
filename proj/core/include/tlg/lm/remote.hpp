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
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tlg/lm/source.hpp"

namespace tlg {

// Where the logit bridge lives: "tcp://host:port" or "stdio:<command line>"
// (the command is split on whitespace and spawned as a child process).
struct RemoteEndpoint {
  enum class Kind { kStdio, kTcp };
  Kind kind = Kind::kTcp;
  std::string host;
  std::uint16_t port = 0;
  std::vector<std::string> command;

  static RemoteEndpoint parse(const std::string& address);
};

// A newline-delimited byte stream to the bridge.
class LineChannel {
 public:
  virtual ~LineChannel() = default;
  virtual void write_line(const std::string& line) = 0;
  virtual std::string read_line() = 0;
};

std::unique_ptr<LineChannel> open_channel(const RemoteEndpoint& endpoint);

struct BridgeInfo {
  std::string name;
  std::size_t vocab_size = 0;
  TokenId bos = 0;
  TokenId eos = 0;
};

// Client side of the logit-bridge protocol. Requests on one connection are
// serialized.
class RemoteLm final : public LogitSource {
 public:
  explicit RemoteLm(const RemoteEndpoint& endpoint, std::size_t max_context = 0);
  RemoteLm(std::unique_ptr<LineChannel> channel, std::size_t max_context = 0);

  std::string name() const override { return "remote:" + info_.name; }
  std::size_t vocab_size() const override { return info_.vocab_size; }
  std::size_t max_context() const override { return max_context_; }
  TokenId bos_id() const override { return info_.bos; }
  TokenId eos_id() const override { return info_.eos; }

  const BridgeInfo& info() const { return info_; }
  std::vector<std::string> fetch_vocab() const;

 protected:
  std::vector<double> compute_logits(std::span<const TokenId> context) const override;

 private:
  nlohmann::json request(const nlohmann::json& message) const;

  mutable std::mutex mutex_;
  std::unique_ptr<LineChannel> channel_;
  BridgeInfo info_;
  std::size_t max_context_;
};

}  // namespace tlg
