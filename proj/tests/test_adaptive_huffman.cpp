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
#include "rankzip/coders/adaptive_huffman.hpp"
#include "rankzip/error.hpp"
#include "test_util.hpp"

using namespace rankzip;
using namespace rankzip::coders;

namespace {

// Encodes one symbol at a time and decodes it with a separate tree; the two
// trees must agree after every step.
bool lockstep(BytesView data) {
  FgkTree enc, dec;
  for (char c : data) {
    Bytes buf;
    BitWriter w(buf);
    enc.encode(static_cast<std::uint8_t>(c), w);
    w.flush();
    BitReader r(buf);
    if (dec.decode(r) != static_cast<std::uint8_t>(c)) return false;
    if (!(enc == dec) || !enc.sibling_property_holds()) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("empty input has an empty payload") {
  CHECK(adaptive_huffman_compress("") == Bytes("AZAH\x01\x00", 6));
  CHECK(adaptive_huffman_decompress(adaptive_huffman_compress("")).empty());
}

TEST_CASE("first symbol is a bare 8-bit literal") {
  CHECK(adaptive_huffman_compress("a") == Bytes("AZAH\x01\x01" "a", 7));
}

TEST_CASE("second distinct symbol is NYT code then literal") {
  // After "a" the tree is root(NYT, a): NYT is "0", a is "1".
  // "ab" = 01100001 | 0 01100010 -> 0x61 0x31 0x00
  CHECK(adaptive_huffman_compress("ab") == Bytes("AZAH\x01\x02\x61\x31\x00", 9));
  // "aa" = 01100001 | 1 -> 0x61 0x80
  CHECK(adaptive_huffman_compress("aa") == Bytes("AZAH\x01\x02\x61\x80", 8));
}

TEST_CASE("encoder and decoder trees agree after every symbol") {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 200; ++i) REQUIRE(lockstep(testing::random_bytes(rng, rng() % 600, 1 + rng() % 256)));
  CHECK(lockstep(testing::corpus("asyoulik.txt").substr(0, 20000)));
  Bytes all;
  for (int r = 0; r < 3; ++r)
    for (int b = 0; b < 256; ++b) all.push_back(static_cast<char>(b));
  CHECK(lockstep(all));
}

TEST_CASE("sibling property holds on skewed input") {
  FgkTree t;
  Bytes buf;
  BitWriter w(buf);
  std::mt19937_64 rng(4);
  std::geometric_distribution<int> g(0.3);
  for (int i = 0; i < 5000; ++i) {
    t.encode(static_cast<std::uint8_t>(std::min(g(rng), 255)), w);
    REQUIRE(t.sibling_property_holds());
  }
}

TEST_CASE("round trips") {
  for (const auto& s : oracle::all_strings("abcd", 4))
    REQUIRE(adaptive_huffman_decompress(adaptive_huffman_compress(s)) == s);
  std::mt19937_64 rng(2);
  for (int i = 0; i < 1000; ++i) {
    const Bytes x = testing::random_bytes(rng, rng() % 2000, 1 + rng() % 256);
    REQUIRE(adaptive_huffman_decompress(adaptive_huffman_compress(x)) == x);
  }
  const Bytes text = testing::corpus("plrabn12.txt");
  const Bytes packed = adaptive_huffman_compress(text);
  CHECK(packed.size() < text.size() * 6 / 10);
  CHECK(adaptive_huffman_decompress(packed) == text);
}

TEST_CASE("truncation is detected") {
  const Bytes packed = adaptive_huffman_compress(testing::corpus("alice29.txt").substr(0, 3000));
  CHECK_THROWS_AS(adaptive_huffman_decompress(packed.substr(0, packed.size() - 5)), CorruptionError);
  CHECK_THROWS_AS(adaptive_huffman_decompress(packed.substr(0, 4)), CorruptionError);
  CHECK_THROWS_AS(adaptive_huffman_decompress(packed + Bytes(1, '\0')), CorruptionError);
}
