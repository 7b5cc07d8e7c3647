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

#include "oracles.hpp"
#include "rankzip/coders/lz77.hpp"
#include "rankzip/error.hpp"
#include "test_util.hpp"

using namespace rankzip;
using namespace rankzip::coders;

namespace {

bool tokens_valid(const std::vector<Lz77Token>& tokens, std::uint32_t window) {
  std::size_t produced = 0;
  for (const auto& t : tokens) {
    if (t.is_literal()) {
      ++produced;
      continue;
    }
    if (t.distance < 1 || t.distance > window || t.distance > produced) return false;
    if (t.length < kLz77MinMatch || t.length > kLz77MaxMatch) return false;
    produced += t.length;
  }
  return true;
}

}  // namespace

TEST_CASE("abcabcabc parses as three literals and one overlapping match") {
  const auto tokens = lz77_parse("abcabcabc");
  CHECK(tokens == std::vector<Lz77Token>{Lz77Token::lit('a'), Lz77Token::lit('b'), Lz77Token::lit('c'),
                                         Lz77Token::ref(3, 6)});
  CHECK(tokens == oracle::lz77_brute_force("abcabcabc", kLz77DefaultWindow));
}

TEST_CASE("distinct bytes give only literals and expand") {
  Bytes all;
  for (int b = 0; b < 256; ++b) all.push_back(static_cast<char>(b));
  const auto tokens = lz77_parse(all);
  CHECK(tokens.size() == 256);
  CHECK(std::all_of(tokens.begin(), tokens.end(), [](const Lz77Token& t) { return t.is_literal(); }));
  CHECK(lz77_compress(all).size() > all.size());
}

TEST_CASE("parse matches the brute-force oracle on every short string over abc") {
  std::size_t n = 0;
  for (const auto& s : oracle::all_strings("abc", 12)) {
    REQUIRE(lz77_parse(s) == oracle::lz77_brute_force(s, kLz77DefaultWindow));
    ++n;
  }
  CHECK(n == 797161);
}

TEST_CASE("small windows and long inputs agree with the oracle") {
  std::mt19937_64 rng(70);
  for (int i = 0; i < 300; ++i) {
    const std::uint32_t window = 1 + static_cast<std::uint32_t>(rng() % 40);
    Bytes s = testing::random_bytes(rng, rng() % 400, 1 + rng() % 4);
    REQUIRE(lz77_parse(s, window) == oracle::lz77_brute_force(s, window));
  }
  const Bytes run(1000, 'z');
  CHECK(lz77_parse(run) == oracle::lz77_brute_force(run, kLz77DefaultWindow));
}

TEST_CASE("tokens satisfy their invariants (fuzz)") {
  std::mt19937_64 rng(71);
  for (int i = 0; i < 500; ++i) {
    const std::uint32_t window = 1 + static_cast<std::uint32_t>(rng() % kLz77MaxWindow);
    const Bytes s = testing::random_bytes(rng, rng() % 5000, 1 + rng() % 8);
    REQUIRE(tokens_valid(lz77_parse(s, window), window));
  }
  const Bytes text = testing::corpus("lcet10.txt");
  CHECK(tokens_valid(lz77_parse(text), kLz77DefaultWindow));
}

TEST_CASE("round trips") {
  for (const auto& s : oracle::all_strings("abcd", 4)) REQUIRE(lz77_decompress(lz77_compress(s)) == s);
  std::mt19937_64 rng(72);
  for (int i = 0; i < 1000; ++i) {
    const Bytes x = testing::random_bytes(rng, rng() % 3000, 1 + rng() % 256);
    REQUIRE(lz77_decompress(lz77_compress(x, 1 + rng() % kLz77MaxWindow)) == x);
  }
  for (const auto& name : testing::corpus_names()) {
    const Bytes text = testing::corpus(name);
    CHECK(lz77_decompress(lz77_compress(text)) == text);
  }
}

TEST_CASE("dangling back-references are corruption") {
  // One group: flag 0x01, reference distance 1 at position 0.
  Bytes bad("AZLZ\x01", 5);
  ByteWriter w(bad);
  w.u32(32768);
  w.varint(3);
  w.u8(0x01);
  w.u16(0);
  w.u8(0);
  CHECK_THROWS_AS(lz77_decompress(bad), CorruptionError);

  const Bytes good = lz77_compress("abcabcabc");
  CHECK_THROWS_AS(lz77_decompress(good.substr(0, good.size() - 1)), CorruptionError);
  CHECK_THROWS_AS(lz77_decompress(good + "x"), CorruptionError);
  CHECK_THROWS_AS(lz77_parse("abc", 0), RangeError);
  CHECK_THROWS_AS(lz77_parse("abc", kLz77MaxWindow + 1), RangeError);
}
