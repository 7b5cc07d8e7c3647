// Copyright 2026 The rankzip Authors
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

#include "rankzip/protocol.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>
#include <sys/un.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cstring>

#include "rankzip/error.hpp"

namespace rankzip::protocol {
namespace {

std::vector<std::string_view> split_words(std::string_view line) {
  std::vector<std::string_view> words;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && line[i] == ' ') ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ') ++i;
    if (i > start) words.push_back(line.substr(start, i - start));
  }
  return words;
}

template <typename T>
T parse_number(std::string_view word, std::string_view line) {
  T value{};
  auto [end, ec] = std::from_chars(word.data(), word.data() + word.size(), value);
  if (ec != std::errc() || end != word.data() + word.size())
    throw ParseError("bad number '" + std::string(word) + "'", static_cast<std::size_t>(word.data() - line.data()));
  return value;
}

std::string join_ids(std::string head, std::span<const TokenId> ids) {
  head += ' ';
  head += std::to_string(ids.size());
  for (TokenId t : ids) {
    head += ' ';
    head += std::to_string(t);
  }
  return head;
}

std::string_view strip_cr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

}  // namespace

std::string format_hello(const Digest& vocab_fingerprint) {
  return "HELLO " + std::to_string(kVersion) + " " + to_hex(vocab_fingerprint);
}

Hello parse_hello(std::string_view line) {
  auto words = split_words(strip_cr(line));
  if (words.size() != 3 || words[0] != "HELLO") throw ParseError("expected HELLO <version> <fingerprint>", 0);
  return {parse_number<int>(words[1], line), digest_from_hex(words[2])};
}

std::string format_ok(std::string_view predictor_id, const Digest& fingerprint) {
  return "OK " + std::string(predictor_id) + " " + to_hex(fingerprint);
}

Welcome parse_welcome(std::string_view line) {
  line = strip_cr(line);
  if (line.starts_with("ERR")) throw TransportError("external predictor refused handshake: " + std::string(line));
  auto words = split_words(line);
  if (words.size() != 3 || words[0] != "OK") throw TransportError("malformed handshake reply: " + std::string(line));
  try {
    return {std::string(words[1]), digest_from_hex(words[2])};
  } catch (const ParseError&) {
    throw TransportError("malformed predictor fingerprint in handshake reply");
  }
}

std::string format_rank(std::span<const TokenId> context) { return join_ids("RANK", context); }

std::vector<TokenId> parse_rank(std::string_view line) {
  line = strip_cr(line);
  auto words = split_words(line);
  if (words.size() < 2 || words[0] != "RANK") throw ParseError("expected RANK <n> <ids...>", 0);
  auto n = parse_number<std::size_t>(words[1], line);
  if (words.size() != n + 2) throw ParseError("RANK count does not match ids", 0);
  std::vector<TokenId> ids;
  ids.reserve(n);
  for (std::size_t i = 0; i < n; ++i) ids.push_back(parse_number<TokenId>(words[i + 2], line));
  return ids;
}

std::string format_tops(std::span<const TokenId> top) { return join_ids("TOPS", top) + " REST LEX"; }

std::vector<TokenId> parse_tops(std::string_view line, std::size_t vocab_size) {
  line = strip_cr(line);
  auto words = split_words(line);
  if (words.size() < 4 || words[0] != "TOPS") throw ParseError("expected TOPS <m> <ids...> REST LEX", 0);
  auto m = parse_number<std::size_t>(words[1], line);
  if (words.size() != m + 4 || words[m + 2] != "REST" || words[m + 3] != "LEX")
    throw ParseError("TOPS count does not match ids or REST LEX missing", 0);
  std::vector<TokenId> ids;
  ids.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    auto t = parse_number<TokenId>(words[i + 2], line);
    if (t >= vocab_size)
      throw ParseError("TOPS id outside vocabulary", static_cast<std::size_t>(words[i + 2].data() - line.data()));
    ids.push_back(t);
  }
  std::vector<TokenId> sorted(ids);
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw ParseError("TOPS repeats an id", 0);
  return ids;
}

std::string format_err(std::string_view reason) { return "ERR " + std::string(reason); }

// --- LineChannel ---------------------------------------------------------

LineChannel::LineChannel(LineChannel&& other) noexcept : fd_(other.fd_), buffer_(std::move(other.buffer_)) {
  other.fd_ = -1;
}

LineChannel& LineChannel::operator=(LineChannel&& other) noexcept {
  if (this != &other) {
    close();
    fd_ = other.fd_;
    buffer_ = std::move(other.buffer_);
    other.fd_ = -1;
  }
  return *this;
}

LineChannel::~LineChannel() { close(); }

void LineChannel::close() noexcept {
  if (fd_ >= 0) ::close(fd_);
  fd_ = -1;
  buffer_.clear();
}

LineChannel LineChannel::connect(std::string_view address) {
  const std::string where(address);
  if (address.starts_with("unix:")) {
    std::string path(address.substr(5));
    sockaddr_un sa{};
    if (path.size() >= sizeof(sa.sun_path)) throw TransportError("socket path too long: " + path);
    sa.sun_family = AF_UNIX;
    std::memcpy(sa.sun_path, path.c_str(), path.size() + 1);
    int fd = ::socket(AF_UNIX, SOCK_STREAM, 0);
    if (fd < 0) throw TransportError(std::string("socket: ") + std::strerror(errno));
    if (::connect(fd, reinterpret_cast<sockaddr*>(&sa), sizeof(sa)) != 0) {
      int err = errno;
      ::close(fd);
      throw TransportError("cannot reach external predictor at " + where + ": " + std::strerror(err));
    }
    return LineChannel(fd);
  }

  auto colon = address.rfind(':');
  if (colon == std::string_view::npos || colon == 0 || colon + 1 == address.size())
    throw TransportError("bad predictor address '" + where + "' (expected host:port or unix:<path>)");
  std::string host(address.substr(0, colon));
  std::string port(address.substr(colon + 1));
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* found = nullptr;
  if (int rc = ::getaddrinfo(host.c_str(), port.c_str(), &hints, &found); rc != 0)
    throw TransportError("cannot resolve " + where + ": " + ::gai_strerror(rc));
  int last_err = 0;
  for (addrinfo* ai = found; ai != nullptr; ai = ai->ai_next) {
    int fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
    if (fd < 0) {
      last_err = errno;
      continue;
    }
    if (::connect(fd, ai->ai_addr, ai->ai_addrlen) == 0) {
      ::freeaddrinfo(found);
      return LineChannel(fd);
    }
    last_err = errno;
    ::close(fd);
  }
  ::freeaddrinfo(found);
  throw TransportError("cannot reach external predictor at " + where + ": " + std::strerror(last_err));
}

void LineChannel::write_line(std::string_view line) {
  if (fd_ < 0) throw TransportError("channel is closed");
  std::string framed(line);
  framed.push_back('\n');
  std::size_t sent = 0;
  while (sent < framed.size()) {
    ssize_t n = ::send(fd_, framed.data() + sent, framed.size() - sent, MSG_NOSIGNAL);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw TransportError(std::string("send failed: ") + std::strerror(errno));
    }
    sent += static_cast<std::size_t>(n);
  }
}

std::optional<std::string> LineChannel::read_line() {
  if (fd_ < 0) throw TransportError("channel is closed");
  std::size_t scanned = 0;
  for (;;) {
    if (auto nl = buffer_.find('\n', scanned); nl != std::string::npos) {
      std::string line = buffer_.substr(0, nl);
      buffer_.erase(0, nl + 1);
      return line;
    }
    scanned = buffer_.size();
    if (buffer_.size() > kMaxLine) throw TransportError("line exceeds protocol limit");
    char chunk[65536];
    ssize_t n = ::recv(fd_, chunk, sizeof(chunk), 0);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw TransportError(std::string("receive failed: ") + std::strerror(errno));
    }
    if (n == 0) {
      if (buffer_.empty()) return std::nullopt;
      throw TransportError("connection closed mid-line");
    }
    buffer_.append(chunk, static_cast<std::size_t>(n));
  }
}

// --- Server side ---------------------------------------------------------

void serve_session(LineChannel& channel, const ServerConfig& config, const RankFunction& rank) {
  auto first = channel.read_line();
  if (!first) return;
  try {
    Hello hello = parse_hello(*first);
    if (hello.version != kVersion) {
      channel.write_line(format_err("unsupported-version"));
      return;
    }
    if (hello.vocab_fingerprint != config.vocab_fingerprint) {
      channel.write_line(format_err("vocab-mismatch"));
      return;
    }
  } catch (const Error&) {
    channel.write_line(format_err("malformed-hello"));
    return;
  }
  channel.write_line(format_ok(config.predictor_id, config.predictor_fingerprint));

  while (auto line = channel.read_line()) {
    std::string_view request = strip_cr(*line);
    if (request == "BYE") return;
    if (!request.starts_with("RANK")) {
      channel.write_line(format_err("unknown-command"));
      continue;
    }
    std::vector<TokenId> context;
    try {
      context = parse_rank(request);
    } catch (const Error&) {
      channel.write_line(format_err("malformed"));
      continue;
    }
    if (context.size() > config.max_context) {
      channel.write_line(format_err("context-too-long"));
      continue;
    }
    if (std::any_of(context.begin(), context.end(), [&](TokenId t) { return t >= config.vocab_size; })) {
      channel.write_line(format_err("bad-token"));
      continue;
    }
    std::vector<TokenId> top = rank(context);
    if (top.size() > config.top_m) top.resize(config.top_m);
    channel.write_line(format_tops(top));
  }
}

LocalServer::LocalServer(ServerConfig config, RankFunction rank, std::uint16_t port)
    : config_(std::move(config)), rank_(std::move(rank)) {
  listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (listen_fd_ < 0) throw TransportError(std::string("socket: ") + std::strerror(errno));
  int yes = 1;
  ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
  sockaddr_in sa{};
  sa.sin_family = AF_INET;
  sa.sin_port = htons(port);
  sa.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
  if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&sa), sizeof(sa)) != 0 || ::listen(listen_fd_, 8) != 0) {
    int err = errno;
    ::close(listen_fd_);
    throw TransportError(std::string("cannot listen: ") + std::strerror(err));
  }
  socklen_t len = sizeof(sa);
  ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&sa), &len);
  port_ = ntohs(sa.sin_port);

  worker_ = std::thread([this] {
    while (!stopping_) {
      pollfd pfd{listen_fd_, POLLIN, 0};
      if (::poll(&pfd, 1, 50) <= 0) continue;
      int fd = ::accept(listen_fd_, nullptr, nullptr);
      if (fd < 0) continue;
      LineChannel channel(fd);
      try {
        serve_session(channel, config_, rank_);
      } catch (const std::exception&) {
        // client vanished; wait for the next one
      }
    }
  });
}

LocalServer::~LocalServer() { stop(); }

void LocalServer::stop() {
  stopping_ = true;
  if (worker_.joinable()) worker_.join();
  if (listen_fd_ >= 0) ::close(listen_fd_);
  listen_fd_ = -1;
}

}  // namespace rankzip::protocol
