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

#include <map>
#include <random>

#include "oracle_predictor.hpp"
#include "rankzip/error.hpp"
#include "rankzip/rank_codec.hpp"
#include "test_util.hpp"

using namespace rankzip;

TEST_CASE("perfect predictor yields all zeros") {
  const auto vocab = Vocabulary::byte_level();
  const Bytes text = "It was the best of times, it was the worst of times.";
  const auto tokens = tokenize(text, vocab).tokens;
  testing::OraclePredictor oracle(tokens, vocab.size());
  const RankStream s = encode_ranks(text, oracle, vocab);
  CHECK(s.token_count == text.size());
  CHECK(std::all_of(s.ranks.begin(), s.ranks.end(), [](auto r) { return r == 0; }));
  // Decoding zeros replays the oracle's own continuation.
  CHECK(decode_ranks(s, oracle, vocab) == text);
}

TEST_CASE("empty text gives an empty stream") {
  const auto vocab = Vocabulary::byte_level();
  BuiltinModel m(256, 3);
  const RankStream s = encode_ranks("", m, vocab);
  CHECK(s.ranks.empty());
  CHECK(s.token_count == 0);
  CHECK(decode_ranks(s, m, vocab).empty());
}

TEST_CASE("abababab under an order-1 byte model") {
  const auto vocab = Vocabulary::byte_level();
  BuiltinModel m(256, 1);
  const RankStream s = encode_ranks("abababab", m, vocab);
  // 'a' under the identity ranking, then 'b' behind 'a' and ids 0..96, then
  // every bigram has been seen once.
  CHECK(s.ranks == std::vector<std::uint32_t>{97, 98, 0, 0, 0, 0, 0, 0});
}

TEST_CASE("serialization examples") {
  const std::vector<std::uint32_t> r{0, 2, 0};
  CHECK(serialize_ranks(r, RankSerialization::ascii_dot) == "0.2.0");
  CHECK(serialize_ranks(r, RankSerialization::varint) == Bytes("\x00\x02\x00", 3));
  CHECK(serialize_ranks(std::vector<std::uint32_t>{300}, RankSerialization::varint) == "\xac\x02");
  CHECK(serialize_ranks(std::vector<std::uint32_t>{}, RankSerialization::ascii_dot).empty());
  CHECK(serialize_ranks(std::vector<std::uint32_t>{4294967295u}, RankSerialization::ascii_dot) == "4294967295");
  CHECK(deserialize_ranks("0.2.0", RankSerialization::ascii_dot).ranks == r);
  CHECK(deserialize_ranks("", RankSerialization::ascii_dot).ranks.empty());
  CHECK(deserialize_ranks("", RankSerialization::varint).ranks.empty());
  CHECK(deserialize_ranks("\xac\x02", RankSerialization::varint).ranks == std::vector<std::uint32_t>{300});
}

TEST_CASE("malformed serializations report offsets") {
  auto offset_of = [](BytesView data, RankSerialization mode) -> long {
    try {
      deserialize_ranks(data, mode);
    } catch (const ParseError& e) {
      return static_cast<long>(e.offset());
    }
    return -1;
  };
  CHECK(offset_of("1..2", RankSerialization::ascii_dot) == 2);
  CHECK(offset_of(".1", RankSerialization::ascii_dot) == 0);
  CHECK(offset_of("1.", RankSerialization::ascii_dot) == 2);
  CHECK(offset_of("1.x", RankSerialization::ascii_dot) == 2);
  CHECK(offset_of("12.05", RankSerialization::ascii_dot) == 3);
  CHECK(offset_of("4294967296", RankSerialization::ascii_dot) == 0);
  CHECK(offset_of("\x01\x80", RankSerialization::varint) == 1);
  CHECK(offset_of("\x80\x80\x80\x80\x10", RankSerialization::varint) == 0);
  CHECK(offset_of("\x05\x80\x00", RankSerialization::varint) == 1);
}

TEST_CASE("both serializations round trip the same stream") {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 300; ++i) {
    std::vector<std::uint32_t> ranks(rng() % 200);
    for (auto& r : ranks) r = static_cast<std::uint32_t>(rng() % 4 == 0 ? rng() : rng() % 20);
    for (auto mode : {RankSerialization::ascii_dot, RankSerialization::varint}) {
      const auto back = deserialize_ranks(serialize_ranks(ranks, mode), mode);
      CHECK(back.ranks == ranks);
      CHECK(back.token_count == ranks.size());
    }
  }
}

TEST_CASE("end-to-end round trip through both serializations") {
  const auto bpe = Vocabulary::load(testing::english_vocab_path());
  const auto bytes = Vocabulary::byte_level();
  std::mt19937_64 rng(44);
  for (int i = 0; i < 1000; ++i) {
    const Bytes x = testing::random_utf8(rng, rng() % 400);
    const Vocabulary& v = i % 2 ? bpe : bytes;
    BuiltinModel m(v.size(), static_cast<std::uint8_t>(i % 4));
    const RankStream s = encode_ranks(x, m, v);
    for (auto mode : {RankSerialization::ascii_dot, RankSerialization::varint}) {
      RankStream back = deserialize_ranks(serialize_ranks(s, mode), mode);
      back.predictor_fingerprint = s.predictor_fingerprint;
      back.vocab_fingerprint = s.vocab_fingerprint;
      REQUIRE(back == s);
      REQUIRE(decode_ranks(back, m, v) == x);
    }
  }
  for (const auto& name : {"alice29.txt", "asyoulik.txt", "plrabn12.txt"}) {
    const Bytes text = testing::corpus(name).substr(0, 120000);
    BuiltinModel m(bpe.size(), 3);
    const RankStream s = encode_ranks(text, m, bpe);
    CHECK(decode_ranks(s, m, bpe) == text);
  }
}

TEST_CASE("decoder refuses a different predictor or vocabulary") {
  const auto v = Vocabulary::byte_level();
  BuiltinModel k3(256, 3), k2(256, 2);
  const RankStream s = encode_ranks("hello hello", k3, v);
  CHECK_THROWS_WITH_AS(decode_ranks(s, k2, v), doctest::Contains("predictor mismatch"), MismatchError);
  const auto other = Vocabulary::from_merges({{'l', 'l'}});
  BuiltinModel k3b(other.size(), 3);
  RankStream s2 = s;
  s2.predictor_fingerprint = k3b.descriptor().fingerprint();
  CHECK_THROWS_WITH_AS(decode_ranks(s2, k3b, other), doctest::Contains("vocabulary mismatch"), MismatchError);
}

TEST_CASE("rank out of range is corruption") {
  const auto v = Vocabulary::byte_level();
  BuiltinModel m(256, 3);
  RankStream s = encode_ranks("abc", m, v);
  s.ranks[1] = 256;
  CHECK_THROWS_AS(decode_ranks(s, m, v), CorruptionError);
}

TEST_CASE("tampering one rank changes only the suffix") {
  const auto v = Vocabulary::byte_level();
  BuiltinModel m(256, 3);
  const Bytes text = testing::corpus("alice29.txt").substr(1000, 2000);
  RankStream s = encode_ranks(text, m, v);
  s.ranks[700] = s.ranks[700] == 0 ? 1 : 0;
  const Bytes out = decode_ranks(s, m, v);
  CHECK(out.substr(0, 700) == text.substr(0, 700));
  CHECK(out[700] != text[700]);
}

TEST_CASE("rank frequencies decay on English text") {
  const Bytes text = testing::corpus("alice29.txt").substr(0, 60000);
  for (const auto& v : {Vocabulary::byte_level(), Vocabulary::load(testing::english_vocab_path())}) {
    BuiltinModel m(v.size(), 3);
    const RankStream s = encode_ranks(text, m, v);
    std::map<std::uint32_t, std::size_t> freq;
    for (auto r : s.ranks) ++freq[r];
    MESSAGE("vocab " << v.size() << ": f0=" << freq[0] << " f1=" << freq[1] << " f10=" << freq[10]);
    CHECK(freq[0] > freq[1]);
    CHECK(freq[1] > freq[10]);
  }
}
