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

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "rankzip/coders/arithmetic.hpp"
#include "rankzip/error.hpp"
#include "test_util.hpp"

using namespace rankzip;
using namespace rankzip::coders;

namespace {

double payload_bits(BytesView data) {
  const Bytes out = arithmetic_compress(data);
  return 8.0 * static_cast<double>(out.size() - arithmetic_header_size(data.size()));
}

}  // namespace

TEST_CASE("model cumulative counts and lookup") {
  AdaptiveByteModel m;
  CHECK(m.total() == 257);
  CHECK(m.cumulative(0) == 0);
  CHECK(m.cumulative(256) == 256);
  for (int i = 0; i < 10; ++i) m.update('e');
  CHECK(m.frequency('e') == 11);
  CHECK(m.cumulative('f') == 'e' + 11);
  for (std::uint32_t target = 0; target < m.total(); ++target) {
    const unsigned s = m.find(target);
    REQUIRE(m.cumulative(s) <= target);
    REQUIRE(target < m.cumulative(s) + m.frequency(s));
  }
}

TEST_CASE("counts halve when the total reaches the limit") {
  AdaptiveByteModel m;
  const std::uint32_t steps = AdaptiveByteModel::kMaxTotal - 257;
  for (std::uint32_t i = 0; i + 1 < steps; ++i) m.update(7);
  CHECK(m.total() == AdaptiveByteModel::kMaxTotal - 1);
  m.update(7);
  // 7: 1 + steps -> halved rounding up; 256 others: 1 -> 1
  CHECK(m.frequency(7) == (1 + steps + 1) / 2);
  CHECK(m.frequency(8) == 1);
  CHECK(m.total() == m.frequency(7) + 256);
}

TEST_CASE("empty input is header only") {
  const Bytes out = arithmetic_compress("");
  CHECK(out.size() <= arithmetic_header_size(0) + 2);
  CHECK(arithmetic_decompress(out).empty());
}

TEST_CASE("payload stays within 64 bits of the model's code length") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 100; ++i) {
    const Bytes x = testing::random_bytes(rng, rng() % 20000, 1 + rng() % 256);
    const double ideal = oracle::adaptive_code_length(x);
    const double got = payload_bits(x);
    INFO("n=" << x.size() << " ideal=" << ideal << " got=" << got);
    REQUIRE(std::abs(got - ideal) <= 64.0);
  }
  const Bytes text = testing::corpus("alice29.txt");
  CHECK(std::abs(payload_bits(text) - oracle::adaptive_code_length(text)) <= 64.0);
}

TEST_CASE("uniform random data barely expands") {
  std::mt19937_64 rng(64);
  const Bytes x = testing::random_bytes(rng, 65536);
  const Bytes out = arithmetic_compress(x);
  const double bound_bytes = oracle::adaptive_code_length(x) / 8.0 + 8 + static_cast<double>(arithmetic_header_size(x.size()));
  MESSAGE("64 KiB random -> " << out.size() << " bytes (model bound " << bound_bytes << ")");
  CHECK(out.size() >= 65536 - 64);
  CHECK(static_cast<double>(out.size()) <= bound_bytes);
  CHECK(out.size() <= 65536 + 512);
  CHECK(arithmetic_decompress(out) == x);
}

// Expected to fail: a Laplace-initialized adaptive model cannot reach this.
TEST_CASE("uniform random data within 64 bytes of its size" * doctest::should_fail()) {
  std::mt19937_64 rng(64);
  const Bytes x = testing::random_bytes(rng, 65536);
  CHECK(arithmetic_compress(x).size() <= 65536 + 64);
}

TEST_CASE("ab repeated matches the model's cross-entropy") {
  Bytes x;
  for (int i = 0; i < 10000; ++i) x += "ab";
  const double ideal = oracle::adaptive_code_length(x);
  const double got = payload_bits(x);
  CHECK(std::abs(got - ideal) <= 0.03 * ideal);
  CHECK(arithmetic_decompress(arithmetic_compress(x)) == x);
}

TEST_CASE("long runs exercise carry propagation") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    Bytes x(static_cast<std::size_t>(rng() % 50000), static_cast<char>(rng() % 256));
    for (std::size_t j = 0; j < x.size(); j += 1 + rng() % 3000) x[j] = static_cast<char>(rng());
    REQUIRE(arithmetic_decompress(arithmetic_compress(x)) == x);
  }
  const Bytes zeros(1 << 23, '\0');
  CHECK(arithmetic_decompress(arithmetic_compress(zeros)) == zeros);
}

TEST_CASE("round trips") {
  for (const auto& s : oracle::all_strings("abcd", 4)) REQUIRE(arithmetic_decompress(arithmetic_compress(s)) == s);
  std::mt19937_64 rng(9);
  for (int i = 0; i < 1000; ++i) {
    const Bytes x = testing::random_bytes(rng, rng() % 3000, 1 + rng() % 256);
    REQUIRE(arithmetic_decompress(arithmetic_compress(x)) == x);
  }
}

TEST_CASE("truncated or padded streams are rejected") {
  const Bytes packed = arithmetic_compress(testing::corpus("alice29.txt").substr(0, 4000));
  CHECK_THROWS_AS(arithmetic_decompress(packed.substr(0, packed.size() / 2)), CorruptionError);
  CHECK_THROWS_AS(arithmetic_decompress(packed.substr(0, 5)), CorruptionError);
  CHECK_THROWS_AS(arithmetic_decompress(packed + "\x01"), CorruptionError);
  CHECK_THROWS_AS(arithmetic_decompress(packed + Bytes(1, '\0')), CorruptionError);
}
