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

#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "rankzip/bytes.hpp"
#include "rankzip/tokenizer.hpp"

// Line-oriented external predictor protocol.
//
//   client: HELLO <version> <vocab-fingerprint-hex>
//   server: OK <predictor-id> <predictor-fingerprint-hex> | ERR <reason>
//   client: RANK <n> <tid_1> ... <tid_n>
//   server: TOPS <m> <tid_a> ... <tid_m> REST LEX | ERR <reason>
//   client: BYE
//
// Tokens missing from a TOPS reply rank after position m in ascending id
// order. Lines end with '\n'; a trailing '\r' is tolerated.
namespace rankzip::protocol {

inline constexpr int kVersion = 1;
inline constexpr std::size_t kDefaultTopM = 4096;
inline constexpr std::size_t kMaxLine = 1 << 24;

struct Hello {
  int version;
  Digest vocab_fingerprint;
};

struct Welcome {
  std::string predictor_id;
  Digest predictor_fingerprint;
};

std::string format_hello(const Digest& vocab_fingerprint);
Hello parse_hello(std::string_view line);

std::string format_ok(std::string_view predictor_id, const Digest& fingerprint);
// Throws TransportError carrying the reason on an ERR reply.
Welcome parse_welcome(std::string_view line);

std::string format_rank(std::span<const TokenId> context);
std::vector<TokenId> parse_rank(std::string_view line);

std::string format_tops(std::span<const TokenId> top);
// Validates ids against the vocabulary size; duplicates are rejected.
std::vector<TokenId> parse_tops(std::string_view line, std::size_t vocab_size);

std::string format_err(std::string_view reason);

// Owns a connected stream socket and frames it into lines.
class LineChannel {
 public:
  LineChannel() = default;
  explicit LineChannel(int fd) : fd_(fd) {}
  LineChannel(LineChannel&& other) noexcept;
  LineChannel& operator=(LineChannel&& other) noexcept;
  LineChannel(const LineChannel&) = delete;
  LineChannel& operator=(const LineChannel&) = delete;
  ~LineChannel();

  // "host:port" for TCP, "unix:<path>" for a local socket.
  static LineChannel connect(std::string_view address);

  bool is_open() const noexcept { return fd_ >= 0; }
  void write_line(std::string_view line);
  // Returns nullopt on orderly end of stream.
  std::optional<std::string> read_line();
  void close() noexcept;

 private:
  int fd_ = -1;
  std::string buffer_;
};

// Produces the head of the ranking for a context; at most top_m ids.
using RankFunction = std::function<std::vector<TokenId>(std::span<const TokenId> context)>;

struct ServerConfig {
  std::string predictor_id = "reference";
  Digest predictor_fingerprint{};
  Digest vocab_fingerprint{};
  std::size_t vocab_size = 256;
  std::size_t max_context = 100;
  std::size_t top_m = kDefaultTopM;
};

// Runs one session on an accepted connection until BYE or end of stream.
// Every request receives exactly one reply line.
void serve_session(LineChannel& channel, const ServerConfig& config, const RankFunction& rank);

// Minimal TCP server on 127.0.0.1 handling sessions on a background thread,
// one at a time. Port 0 picks a free port.
class LocalServer {
 public:
  LocalServer(ServerConfig config, RankFunction rank, std::uint16_t port = 0);
  ~LocalServer();
  LocalServer(const LocalServer&) = delete;
  LocalServer& operator=(const LocalServer&) = delete;

  std::uint16_t port() const noexcept { return port_; }
  std::string address() const { return "127.0.0.1:" + std::to_string(port_); }
  void stop();

 private:
  ServerConfig config_;
  RankFunction rank_;
  int listen_fd_ = -1;
  std::uint16_t port_ = 0;
  std::atomic<bool> stopping_{false};
  std::thread worker_;
};

}  // namespace rankzip::protocol
