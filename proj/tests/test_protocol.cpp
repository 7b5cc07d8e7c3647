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

#include <doctest.h>

#include <random>

#include "rankzip/error.hpp"
#include "rankzip/external_predictor.hpp"
#include "rankzip/hashing.hpp"
#include "rankzip/pipeline.hpp"
#include "rankzip/protocol.hpp"
#include "rankzip/rank_codec.hpp"
#include "test_util.hpp"

using namespace rankzip;
using namespace rankzip::protocol;

namespace {

// Deterministic stand-in for a language model: a few candidates derived
// from the last two tokens, most likely first.
std::vector<TokenId> toy_rank(std::span<const TokenId> ctx, std::size_t vocab_size) {
  const TokenId a = ctx.empty() ? 0 : ctx.back();
  const TokenId b = ctx.size() < 2 ? 1 : ctx[ctx.size() - 2];
  std::vector<TokenId> out;
  for (TokenId c : {a, static_cast<TokenId>((a * 31 + b) % vocab_size), static_cast<TokenId>((a + 1) % vocab_size),
                    static_cast<TokenId>((b + 97) % vocab_size), static_cast<TokenId>(vocab_size - 1)})
    if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
  return out;
}

ServerConfig config_for(const Vocabulary& vocab, std::size_t top_m, std::string id = "toy") {
  ServerConfig c;
  c.predictor_id = std::move(id);
  c.predictor_fingerprint = sha256("toy-model/" + c.predictor_id + "/" + std::to_string(top_m));
  c.vocab_fingerprint = vocab.fingerprint();
  c.vocab_size = vocab.size();
  c.max_context = 100;
  c.top_m = top_m;
  return c;
}

// Local mirror of what the client must reconstruct from a TOPS reply.
std::vector<std::uint32_t> expected_ranks(BytesView text, const Vocabulary& vocab, std::size_t top_m, std::size_t window) {
  const auto tokens = tokenize(text, vocab).tokens;
  std::vector<std::uint32_t> ranks;
  ContextWindow ctx(window);
  for (TokenId t : tokens) {
    auto ids = ctx.to_vector();
    auto head = toy_rank(ids, vocab.size());
    if (head.size() > top_m) head.resize(top_m);
    ranks.push_back(Ranking(head, vocab.size()).rank_of(t));
    ctx.push(t);
  }
  return ranks;
}

}  // namespace

TEST_CASE("message formatting and parsing") {
  Digest d{};
  d[0] = 0xAB;
  d[31] = 0x01;
  const std::string hello = format_hello(d);
  CHECK(hello == "HELLO 1 ab" + std::string(60, '0') + "01");
  CHECK(parse_hello(hello).version == 1);
  CHECK(parse_hello(hello + "\r").vocab_fingerprint == d);
  CHECK(parse_welcome(format_ok("toy-lm", d)).predictor_id == "toy-lm");
  CHECK_THROWS_AS(parse_welcome("ERR vocab-mismatch"), TransportError);
  CHECK_THROWS_AS(parse_welcome("OK only-two"), TransportError);

  const std::vector<TokenId> ctx{5, 0, 77};
  CHECK(format_rank(ctx) == "RANK 3 5 0 77");
  CHECK(parse_rank("RANK 3 5 0 77") == ctx);
  CHECK(parse_rank("RANK 0").empty());
  CHECK_THROWS_AS(parse_rank("RANK 2 1"), ParseError);
  CHECK_THROWS_AS(parse_rank("RANK 1 x"), ParseError);

  CHECK(format_tops(ctx) == "TOPS 3 5 0 77 REST LEX");
  CHECK(parse_tops("TOPS 3 5 0 77 REST LEX", 100) == ctx);
  CHECK(parse_tops("TOPS 0 REST LEX", 100).empty());
  CHECK_THROWS_AS(parse_tops("TOPS 3 5 0 77 REST LEX", 50), ParseError);
  CHECK_THROWS_AS(parse_tops("TOPS 2 5 5 REST LEX", 50), ParseError);
  CHECK_THROWS_AS(parse_tops("TOPS 2 5 6", 50), ParseError);
  CHECK_THROWS_AS(parse_tops("TOPS 1 5 6 REST LEX", 50), ParseError);
}

TEST_CASE("REST LEX: unlisted tokens follow in ascending id order") {
  const Ranking r({9, 2, 7}, 10);
  CHECK(r.ordered_tokens() == std::vector<TokenId>{9, 2, 7, 0, 1, 3, 4, 5, 6, 8});
}

TEST_CASE("server answers every request with one line") {
  const Vocabulary vocab = Vocabulary::byte_level();
  LocalServer server(config_for(vocab, 3), [&](auto ctx) { return toy_rank(ctx, vocab.size()); });
  auto ch = LineChannel::connect(server.address());
  ch.write_line(format_hello(vocab.fingerprint()));
  CHECK(ch.read_line()->starts_with("OK toy "));
  ch.write_line("RANK 2 65 66");
  const auto reply = ch.read_line();
  REQUIRE(reply);
  auto head = toy_rank(std::vector<TokenId>{65, 66}, 256);
  head.resize(3);
  CHECK(*reply == format_tops(head));
  ch.write_line("RANK 1 256");
  CHECK(*ch.read_line() == "ERR bad-token");
  ch.write_line("RANK 2 1");
  CHECK(*ch.read_line() == "ERR malformed");
  std::string long_rank = "RANK 101";
  for (int i = 0; i < 101; ++i) long_rank += " 1";
  ch.write_line(long_rank);
  CHECK(*ch.read_line() == "ERR context-too-long");
  ch.write_line("PING");
  CHECK(*ch.read_line() == "ERR unknown-command");
  ch.write_line("RANK 0\r");
  CHECK(ch.read_line()->starts_with("TOPS 3 "));
  ch.write_line("BYE");
  CHECK_FALSE(ch.read_line().has_value());
}

TEST_CASE("handshake refusals") {
  const Vocabulary vocab = Vocabulary::byte_level();
  LocalServer server(config_for(vocab, 3), [&](auto ctx) { return toy_rank(ctx, vocab.size()); });
  {
    auto ch = LineChannel::connect(server.address());
    ch.write_line("HELLO 2 " + to_hex(vocab.fingerprint()));
    CHECK(*ch.read_line() == "ERR unsupported-version");
  }
  {
    auto ch = LineChannel::connect(server.address());
    ch.write_line("HELLO one two");
    CHECK(*ch.read_line() == "ERR malformed-hello");
  }
  const Vocabulary other = Vocabulary::load(testing::english_vocab_path());
  CHECK_THROWS_AS(ExternalPredictor(server.address(), other), TransportError);
}

TEST_CASE("unreachable predictor is a transport error") {
  const Vocabulary vocab = Vocabulary::byte_level();
  std::string address;
  {
    LocalServer server(config_for(vocab, 3), [&](auto ctx) { return toy_rank(ctx, vocab.size()); });
    address = server.address();
  }
  CHECK_THROWS_AS(ExternalPredictor(address, vocab), TransportError);
  CHECK_THROWS_AS(LineChannel::connect("no-port-here"), TransportError);
  CHECK_THROWS_AS(compress_text("hello", PipelineSpec::parse("external:" + address + "+varint+deflate"), vocab),
                  TransportError);
}

TEST_CASE("external ranks match a local mirror, small top_m") {
  const Vocabulary vocab = Vocabulary::load(testing::english_vocab_path());
  const Bytes text = testing::corpus("alice29.txt").substr(0, 6000);
  for (std::size_t top_m : {std::size_t{1}, std::size_t{3}, kDefaultTopM}) {
    LocalServer server(config_for(vocab, top_m), [&](auto ctx) { return toy_rank(ctx, vocab.size()); });
    RankStream ranks;
    {
      ExternalPredictor p(server.address(), vocab);
      ranks = encode_ranks(text, p, vocab);
      CHECK(p.descriptor().id == "external:toy");
      CHECK(ranks.ranks == expected_ranks(text, vocab, top_m, kDefaultWindow));
      CHECK(decode_ranks(ranks, p, vocab) == text);
    }
    const auto big = std::count_if(ranks.ranks.begin(), ranks.ranks.end(), [&](auto r) { return r >= top_m; });
    if (top_m < 5) CHECK(big > 0);
  }
}

TEST_CASE("external pipeline round trip and fingerprint enforcement") {
  const Vocabulary vocab = Vocabulary::load(testing::english_vocab_path());
  const Bytes text = testing::corpus("asyoulik.txt").substr(0, 5000);
  Bytes packed;
  {
    LocalServer server(config_for(vocab, 4), [&](auto ctx) { return toy_rank(ctx, vocab.size()); });
    for (const char* rest : {"+varint+deflate", "+ascii-dot+arithmetic"}) {
      packed = compress_text(text, PipelineSpec::parse("external:" + server.address() + rest), vocab);
      DecompressOptions o;
      o.external_address = server.address();
      REQUIRE(decompress_text(packed, vocab, o) == text);
    }
    CHECK_THROWS_AS(decompress_text(packed, vocab), TransportError);

    PipelineSpec batch = PipelineSpec::parse("external:" + server.address() + "+varint+deflate");
    batch.predictor.mode = InferenceMode::batch;
    batch.predictor.batch_width = 8;
    const Bytes b = compress_text(text, batch, vocab);
    DecompressOptions o;
    o.external_address = server.address();
    CHECK(decompress_text(b, vocab, o) == text);
  }
  // Same id, different model fingerprint.
  LocalServer impostor(config_for(vocab, 5), [&](auto ctx) { return toy_rank(ctx, vocab.size()); });
  DecompressOptions o;
  o.external_address = impostor.address();
  try {
    decompress_text(packed, vocab, o);
    FAIL("decoded under a different predictor");
  } catch (const MismatchError& e) {
    CHECK(e.recorded_id() == "external:toy");
  }
}

TEST_CASE("malformed server replies surface as transport errors") {
  const Vocabulary vocab = Vocabulary::byte_level();
  LocalServer dup(config_for(vocab, 10), [](auto) { return std::vector<TokenId>{3, 3}; });
  {
    ExternalPredictor p(dup.address(), vocab);
    CHECK_THROWS_AS(p.rank_next(), TransportError);
  }
  LocalServer out_of_range(config_for(vocab, 10), [](auto) { return std::vector<TokenId>{300}; });
  ExternalPredictor p(out_of_range.address(), vocab);
  CHECK_THROWS_AS(p.rank_of(0), TransportError);
}
