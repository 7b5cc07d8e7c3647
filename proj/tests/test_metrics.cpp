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

#include <chrono>
#include <cmath>
#include <random>
#include <thread>

#include "oracles.hpp"
#include "rankzip/error.hpp"
#include "rankzip/metrics.hpp"
#include "test_util.hpp"

using namespace rankzip;

TEST_CASE("compression ratio") {
  CHECK(compression_ratio(10000, 4545) == doctest::Approx(2.2002).epsilon(1e-4));
  CHECK(compression_ratio(777, 777) == 1.0);
  CHECK(std::round(compression_ratio(99900, 37553) * 100) / 100 == 2.66);
  CHECK_THROWS_AS(compression_ratio(5, 0), RangeError);
}

TEST_CASE("bits per character") {
  CHECK(bits_per_character(2500, 10000) == 2.0);
  CHECK(bits_per_character(123, 8 * 123) == 1.0);
  CHECK_THROWS_AS(bits_per_character(5, 0), RangeError);
}

TEST_CASE("entropy") {
  CHECK(shannon_entropy("aaaa") == 0.0);
  CHECK(shannon_entropy("ab") == 1.0);
  CHECK(shannon_entropy("aab") == doctest::Approx(0.9183).epsilon(1e-4));
  CHECK_THROWS_AS(shannon_entropy(""), RangeError);
  std::mt19937_64 rng(50);
  for (int i = 0; i < 500; ++i) {
    const unsigned alphabet = 1 + static_cast<unsigned>(rng() % 256);
    const Bytes x = testing::random_bytes(rng, 1 + rng() % 5000, alphabet);
    const double h = shannon_entropy(x);
    REQUIRE(std::abs(h - oracle::entropy_from_histogram(x)) <= 1e-12);
    REQUIRE(h >= 0.0);
    REQUIRE(h <= std::log2(static_cast<double>(alphabet)) + 1e-12);
  }
}

TEST_CASE("ratio times bpc is eight on ASCII") {
  std::mt19937_64 rng(51);
  for (int i = 0; i < 1000; ++i) {
    const Bytes x = testing::random_bytes(rng, 1 + rng() % 4000, 128);
    const auto r = MetricsRecord::measure(x, 1 + rng() % 5000, 0);
    REQUIRE(r.char_count == r.uncompressed_size);
    REQUIRE(std::abs(r.ratio * r.bpc - 8.0) <= 1e-9);
  }
}

TEST_CASE("scalar counts separate bytes from characters") {
  CHECK(count_scalars("") == 0);
  CHECK(count_scalars("abc") == 3);
  CHECK(count_scalars("\xe0\xa4\xb9\xe0\xa4\xbf") == 2);  // two Devanagari scalars
  const auto r = MetricsRecord::measure("\xe0\xa4\xb9\xe0\xa4\xbf", 3, 0);
  CHECK(r.bpc == 4.0);
  CHECK(r.bits_per_scalar == 12.0);
}

TEST_CASE("timed") {
  auto [value, elapsed] = timed([] {
    std::this_thread::sleep_for(std::chrono::milliseconds(50));
    return 7;
  });
  CHECK(value == 7);
  CHECK(elapsed >= 0.05);
  CHECK(elapsed <= 0.25);
  const Bytes text = testing::corpus("alice29.txt");
  for (int i = 0; i < 5; ++i) {
    auto [h, t] = timed([&] { return shannon_entropy(text); });
    CHECK(h > 4.0);
    CHECK(t >= 0.0);
  }
}
