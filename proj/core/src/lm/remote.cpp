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

#include "tlg/lm/remote.hpp"

#include <netdb.h>
#include <signal.h>
#include <sys/socket.h>
#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cmath>
#include <cstring>
#include <sstream>

#include "tlg/common/error.hpp"

namespace tlg {

namespace {

// Buffered line I/O over one socket descriptor.
class SocketChannel : public LineChannel {
 public:
  explicit SocketChannel(int fd, pid_t child = -1) : fd_(fd), child_(child) {}
  ~SocketChannel() override {
    if (fd_ >= 0) ::close(fd_);
    if (child_ > 0) {
      int status = 0;
      if (::waitpid(child_, &status, WNOHANG) == 0) {
        ::kill(child_, SIGTERM);
        ::waitpid(child_, &status, 0);
      }
    }
  }
  SocketChannel(const SocketChannel&) = delete;
  SocketChannel& operator=(const SocketChannel&) = delete;

  void write_line(const std::string& line) override {
    std::string data = line;
    data.push_back('\n');
    std::size_t sent = 0;
    while (sent < data.size()) {
      const ssize_t n = ::send(fd_, data.data() + sent, data.size() - sent, MSG_NOSIGNAL);
      if (n < 0) {
        if (errno == EINTR) continue;
        throw TransportError(std::string("remote lm: send failed: ") + std::strerror(errno));
      }
      sent += static_cast<std::size_t>(n);
    }
  }

  std::string read_line() override {
    for (;;) {
      const auto pos = buffer_.find('\n');
      if (pos != std::string::npos) {
        std::string line = buffer_.substr(0, pos);
        buffer_.erase(0, pos + 1);
        return line;
      }
      char chunk[65536];
      const ssize_t n = ::recv(fd_, chunk, sizeof(chunk), 0);
      if (n < 0) {
        if (errno == EINTR) continue;
        throw TransportError(std::string("remote lm: receive failed: ") + std::strerror(errno));
      }
      if (n == 0) throw TransportError("remote lm: connection closed by peer");
      buffer_.append(chunk, static_cast<std::size_t>(n));
    }
  }

 private:
  int fd_;
  pid_t child_;
  std::string buffer_;
};

std::unique_ptr<LineChannel> spawn_child(const std::vector<std::string>& command) {
  if (command.empty()) throw InvalidArgument("remote lm: empty stdio command");
  int fds[2];
  if (::socketpair(AF_UNIX, SOCK_STREAM, 0, fds) != 0) {
    throw TransportError(std::string("remote lm: socketpair: ") + std::strerror(errno));
  }
  std::vector<char*> argv;
  for (const auto& a : command) argv.push_back(const_cast<char*>(a.c_str()));
  argv.push_back(nullptr);
  const pid_t pid = ::fork();
  if (pid < 0) {
    ::close(fds[0]);
    ::close(fds[1]);
    throw TransportError(std::string("remote lm: fork: ") + std::strerror(errno));
  }
  if (pid == 0) {
    ::dup2(fds[1], STDIN_FILENO);
    ::dup2(fds[1], STDOUT_FILENO);
    ::close(fds[0]);
    ::close(fds[1]);
    ::execvp(argv[0], argv.data());
    ::_exit(127);
  }
  ::close(fds[1]);
  return std::make_unique<SocketChannel>(fds[0], pid);
}

std::unique_ptr<LineChannel> connect_tcp(const std::string& host, std::uint16_t port) {
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* res = nullptr;
  const std::string service = std::to_string(port);
  if (const int rc = ::getaddrinfo(host.c_str(), service.c_str(), &hints, &res); rc != 0) {
    throw TransportError("remote lm: cannot resolve " + host + ": " + ::gai_strerror(rc));
  }
  int fd = -1;
  for (addrinfo* p = res; p != nullptr; p = p->ai_next) {
    fd = ::socket(p->ai_family, p->ai_socktype, p->ai_protocol);
    if (fd < 0) continue;
    if (::connect(fd, p->ai_addr, p->ai_addrlen) == 0) break;
    ::close(fd);
    fd = -1;
  }
  ::freeaddrinfo(res);
  if (fd < 0) throw TransportError("remote lm: cannot connect to " + host + ":" + service);
  return std::make_unique<SocketChannel>(fd);
}

}  // namespace

RemoteEndpoint RemoteEndpoint::parse(const std::string& address) {
  RemoteEndpoint ep;
  if (address.rfind("stdio:", 0) == 0) {
    ep.kind = Kind::kStdio;
    std::istringstream words(address.substr(6));
    for (std::string w; words >> w;) ep.command.push_back(w);
    if (ep.command.empty()) throw InvalidArgument("remote lm: 'stdio:' needs a command");
    return ep;
  }
  std::string rest = address;
  if (rest.rfind("tcp://", 0) == 0) rest = rest.substr(6);
  const auto colon = rest.rfind(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 == rest.size() ||
      rest.find("://") != std::string::npos) {
    throw InvalidArgument("remote lm: expected tcp://host:port or stdio:<command>, got '" +
                          address + "'");
  }
  ep.kind = Kind::kTcp;
  ep.host = rest.substr(0, colon);
  try {
    const int port = std::stoi(rest.substr(colon + 1));
    if (port <= 0 || port > 65535) throw std::out_of_range("port");
    ep.port = static_cast<std::uint16_t>(port);
  } catch (const std::logic_error&) {
    throw InvalidArgument("remote lm: bad port in '" + address + "'");
  }
  return ep;
}

std::unique_ptr<LineChannel> open_channel(const RemoteEndpoint& endpoint) {
  if (endpoint.kind == RemoteEndpoint::Kind::kStdio) return spawn_child(endpoint.command);
  return connect_tcp(endpoint.host, endpoint.port);
}

RemoteLm::RemoteLm(const RemoteEndpoint& endpoint, std::size_t max_context)
    : RemoteLm(open_channel(endpoint), max_context) {}

RemoteLm::RemoteLm(std::unique_ptr<LineChannel> channel, std::size_t max_context)
    : channel_(std::move(channel)), max_context_(max_context) {
  const auto reply = request({{"cmd", "hello"}});
  try {
    info_.name = reply.at("name").get<std::string>();
    info_.vocab_size = reply.at("vocab_size").get<std::size_t>();
    info_.bos = reply.at("bos_id").get<TokenId>();
    info_.eos = reply.at("eos_id").get<TokenId>();
  } catch (const nlohmann::json::exception& e) {
    throw ProtocolError(std::string("remote lm: malformed hello reply: ") + e.what());
  }
  if (info_.vocab_size == 0) throw ProtocolError("remote lm: bridge reports an empty vocabulary");
}

nlohmann::json RemoteLm::request(const nlohmann::json& message) const {
  std::string line;
  {
    std::lock_guard lock(mutex_);
    channel_->write_line(message.dump());
    line = channel_->read_line();
  }
  nlohmann::json reply;
  try {
    reply = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception&) {
    throw ProtocolError("remote lm: reply is not JSON: " + line.substr(0, 80));
  }
  if (!reply.is_object()) throw ProtocolError("remote lm: reply is not a JSON object");
  if (reply.contains("error")) {
    throw ProtocolError("remote lm: bridge error: " + reply["error"].dump());
  }
  return reply;
}

std::vector<std::string> RemoteLm::fetch_vocab() const {
  const auto reply = request({{"cmd", "vocab"}});
  std::vector<std::string> tokens;
  try {
    tokens = reply.at("tokens").get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw ProtocolError(std::string("remote lm: malformed vocab reply: ") + e.what());
  }
  if (tokens.size() != info_.vocab_size) {
    throw ProtocolError("remote lm: vocab reply has " + std::to_string(tokens.size()) +
                        " tokens, hello said " + std::to_string(info_.vocab_size));
  }
  return tokens;
}

std::vector<double> RemoteLm::compute_logits(std::span<const TokenId> context) const {
  const TokenSeq ctx(context.begin(), context.end());
  const auto reply = request({{"cmd", "logits"}, {"context", ctx}});
  const auto it = reply.find("logits");
  if (it == reply.end() || !it->is_array()) throw ProtocolError("remote lm: reply lacks logits");
  std::vector<double> out;
  out.reserve(it->size());
  for (const auto& v : *it) {
    if (!v.is_number()) throw ProtocolError("remote lm: non-numeric logit");
    out.push_back(v.get<double>());
  }
  if (out.size() != info_.vocab_size) {
    throw ProtocolError("remote lm: got " + std::to_string(out.size()) + " logits, expected " +
                        std::to_string(info_.vocab_size));
  }
  return out;
}

}  // namespace tlg
