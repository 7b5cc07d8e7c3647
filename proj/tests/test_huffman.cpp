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

#include <functional>
#include <random>

#include "oracles.hpp"
#include "rankzip/coders/huffman.hpp"
#include "rankzip/error.hpp"
#include "test_util.hpp"

using namespace rankzip;
using namespace rankzip::coders;


TEST_CASE("code lengths are optimal on small alphabets") {
  std::size_t checked = 0;
  for (std::size_t k = 1; k <= 6; ++k) {
    oracle::for_each_multiset(k, 6, [&](const std::vector<std::uint64_t>& f) {
      const auto len = huffman_code_lengths(f);
      REQUIRE(oracle::code_cost(f, len) == oracle::optimal_prefix_cost(f));
      ++checked;
    });
  }
  CHECK(checked > 400);
}

TEST_CASE("zero frequencies get no code, single symbol gets one bit") {
  const std::vector<std::uint64_t> f{0, 5, 0, 0};
  CHECK(huffman_code_lengths(f) == std::vector<std::uint8_t>{0, 1, 0, 0});
  const std::vector<std::uint64_t> g{3, 0, 3};
  CHECK(huffman_code_lengths(g) == std::vector<std::uint8_t>{1, 0, 1});
}

TEST_CASE("canonical codes are prefix-free and ordered") {
  const std::vector<std::uint8_t> len{2, 1, 3, 3};
  const auto codes = canonical_codes(len);
  CHECK(codes == std::vector<std::uint64_t>{0b10, 0b0, 0b110, 0b111});
}

TEST_CASE("aaaa codes in four bits") {
  const Bytes out = huffman_compress("aaaa");
  // magic, version, length, symbol count - 1, (symbol, length), one byte of bits
  CHECK(out == Bytes("AZHF\x01\x04\x00" "a\x01\x00", 10));
  CHECK(huffman_decompress(out) == "aaaa");
}

TEST_CASE("two equiprobable symbols cost one bit each") {
  for (std::size_t n : {8u, 64u, 1000u, 4096u}) {
    Bytes x;
    for (std::size_t i = 0; i < n; ++i) x.push_back(i % 2 ? 'b' : 'a');
    const Bytes out = huffman_compress(x);
    Bytes header = "AZHF\x01";
    ByteWriter(header).varint(n);
    const std::size_t table = 1 + 2 * 2;
    CHECK(out.size() == header.size() + table + (n + 7) / 8);
    CHECK(huffman_decompress(out) == x);
  }
}

TEST_CASE("round trips") {
  CHECK(huffman_decompress(huffman_compress("")) == "");
  for (const auto& s : oracle::all_strings("abcd", 4)) REQUIRE(huffman_decompress(huffman_compress(s)) == s);
  std::mt19937_64 rng(1);
  for (int i = 0; i < 1000; ++i) {
    const Bytes x = testing::random_bytes(rng, rng() % 2000, 1 + rng() % 256);
    REQUIRE(huffman_decompress(huffman_compress(x)) == x);
  }
  const Bytes alice = testing::corpus("alice29.txt");
  CHECK(huffman_decompress(huffman_compress(alice)) == alice);
}

TEST_CASE("damaged headers are rejected") {
  const Bytes good = huffman_compress("hello world");
  CHECK_THROWS_AS(huffman_decompress(good.substr(0, 3)), CorruptionError);
  Bytes bad = good;
  bad[4] = 9;
  CHECK_THROWS_AS(huffman_decompress(bad), CorruptionError);
  // A table whose lengths do not form a complete code.
  CHECK_THROWS_AS(huffman_decompress(Bytes("AZHF\x01\x02\x01" "a\x01" "b\x02\x00", 12)), CorruptionError);
  // Symbols out of order.
  CHECK_THROWS_AS(huffman_decompress(Bytes("AZHF\x01\x02\x01" "b\x01" "a\x01\x00", 12)), CorruptionError);
  CHECK_THROWS_AS(huffman_decompress(good.substr(0, good.size() - 1)), CorruptionError);
  CHECK_THROWS_AS(huffman_decompress(good + "x"), CorruptionError);
}
