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

#include "rankzip/coders/backend.hpp"
#include "rankzip/error.hpp"
#include "test_util.hpp"

using namespace rankzip;
using namespace rankzip::coders;

TEST_CASE("gzip members round trip at every level") {
  const Bytes text = testing::corpus("alice29.txt");
  for (int level = 0; level <= 9; ++level) {
    const Bytes z = deflate_compress(text, level);
    REQUIRE(z.substr(0, 3) == Bytes("\x1f\x8b\x08", 3));
    REQUIRE(deflate_decompress(z) == text);
  }
  CHECK(deflate_decompress(deflate_compress("")).empty());
  CHECK_THROWS_AS(deflate_compress("x", 10), RangeError);
}

TEST_CASE("gzip rejects damage and trailing data") {
  const Bytes z = deflate_compress(testing::corpus("asyoulik.txt"));
  CHECK_THROWS_AS(deflate_decompress(z.substr(0, z.size() - 3)), CorruptionError);
  CHECK_THROWS_AS(deflate_decompress(z + z), CorruptionError);
  Bytes bad = z;
  bad[bad.size() - 6] ^= 0x40;  // inside the CRC-32 trailer
  CHECK_THROWS_AS(deflate_decompress(bad), CorruptionError);
  CHECK_THROWS_AS(deflate_decompress("not gzip"), CorruptionError);
}

TEST_CASE("brotli round trips and beats deflate on English") {
  if (!brotli_available()) {
    CHECK_THROWS_AS(brotli_compress("x"), CapabilityError);
    return;
  }
  const Bytes text = testing::corpus("alice29.txt").substr(0, 10000);
  const Bytes b = brotli_compress(text);
  CHECK(brotli_decompress(b) == text);
  CHECK(b.size() < deflate_compress(text).size());
  CHECK(brotli_decompress(brotli_compress("")).empty());
  std::mt19937_64 rng(12);
  for (int i = 0; i < 50; ++i) {
    const Bytes x = testing::random_bytes(rng, rng() % 5000, 1 + rng() % 256);
    REQUIRE(brotli_decompress(brotli_compress(x, static_cast<int>(rng() % 12))) == x);
  }
  CHECK_THROWS_AS(brotli_decompress(b.substr(0, b.size() / 2)), CorruptionError);
  CHECK_THROWS_AS(brotli_decompress(b + "junk"), CorruptionError);
  CHECK_THROWS_AS(brotli_compress("x", 12), RangeError);
}
