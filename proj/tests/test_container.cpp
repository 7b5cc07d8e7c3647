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

#include "random_meta.hpp"
#include "rankzip/container.hpp"
#include "rankzip/error.hpp"
#include "rankzip/hashing.hpp"
#include "rankzip/pipeline.hpp"
#include "test_util.hpp"

using namespace rankzip;
using Kind = ContainerError::Kind;

namespace {

Kind kind_of(BytesView data) {
  try {
    unpack(data);
  } catch (const ContainerError& e) {
    return e.kind();
  }
  FAIL("unpack accepted damaged data");
  return Kind::malformed;
}

ContainerMeta raw_meta(std::size_t length) {
  ContainerMeta m;
  m.predictor.kind = PredictorKind::none;
  m.predictor.id.clear();
  m.predictor.order = 0;
  m.predictor.window = 0;
  m.original_length = length;
  return m;
}

}  // namespace

TEST_CASE("pack/unpack identity on random metadata") {
  std::mt19937_64 rng(40);
  for (int i = 0; i < 2000; ++i) {
    const ContainerMeta m = testing::random_meta(rng);
    const Bytes payload = testing::random_bytes(rng, rng() % 300);
    const Bytes packed = pack(m, payload);
    const Container c = unpack(packed);
    REQUIRE(c.meta == m);
    REQUIRE(c.payload == payload);
    REQUIRE(packed.size() == kContainerFixedOverhead + m.predictor.id.size() + payload.size());
  }
}

TEST_CASE("overhead stays within 128 bytes plus the id") {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 100; ++i) {
    const ContainerMeta m = testing::random_meta(rng);
    CHECK(pack(m, "").size() <= 128 + m.predictor.id.size());
  }
}

TEST_CASE("distinct error kinds") {
  std::mt19937_64 rng(42);
  const ContainerMeta m = testing::random_meta(rng);
  const Bytes good = pack(m, "payload bytes");

  Bytes b = good;
  b[0] = 'X';
  CHECK(kind_of(b) == Kind::bad_magic);
  CHECK(kind_of("") == Kind::bad_magic);
  b = good;
  b[4] = 2;
  CHECK(kind_of(b) == Kind::bad_version);
  CHECK(kind_of(good.substr(0, 4)) == Kind::truncated);
  CHECK(kind_of(good.substr(0, 40)) == Kind::truncated);
  CHECK(kind_of(good.substr(0, good.size() - 2)) == Kind::truncated);
  CHECK(kind_of(good + "x") == Kind::malformed);
  b = good;
  b[b.size() - 6] ^= 1;  // last payload byte
  CHECK(kind_of(b) == Kind::checksum_mismatch);
}

TEST_CASE("inconsistent metadata is refused at pack time") {
  ContainerMeta m = raw_meta(10);
  m.serialization = RankSerialization::varint;
  CHECK_THROWS_AS(pack(m, ""), UsageError);

  ContainerMeta b;
  b.predictor = PredictorDescriptor::builtin(3);
  b.serialization = RankSerialization::varint;
  CHECK_THROWS_AS(pack(b, ""), UsageError);  // fingerprint left zero
  b.predictor_fingerprint = b.predictor.fingerprint();
  b.token_count = 5;
  b.original_length = 4;
  CHECK_THROWS_AS(pack(b, ""), UsageError);
  b.original_length = 5;
  CHECK_NOTHROW(pack(b, ""));
  b.coder = {coders::CoderId::deflate, 10};
  CHECK_THROWS_AS(pack(b, ""), UsageError);
}

TEST_CASE("raw-coder containers decode through the coder alone") {
  const Bytes text = testing::corpus("asyoulik.txt");
  ContainerMeta m = raw_meta(text.size());
  m.text_crc32 = crc32(text);
  const Bytes packed = pack(m, coders::compress(m.coder, text));
  const Vocabulary vocab = Vocabulary::byte_level();
  CHECK(decompress_text(packed, vocab) == text);

  // Payload intact, wrong text CRC recorded: caught after decoding.
  m.text_crc32 ^= 1;
  const Bytes lying = pack(m, coders::compress(m.coder, text));
  try {
    decompress_text(lying, vocab);
    FAIL("accepted a wrong text CRC");
  } catch (const ContainerError& e) {
    CHECK(e.kind() == Kind::crc_mismatch);
  }
}

TEST_CASE("every single-byte mutation is detected") {
  std::mt19937_64 rng(43);
  const Vocabulary vocab = Vocabulary::byte_level();
  const Bytes text = testing::corpus("alice29.txt").substr(0, 3000);
  const Bytes packed = compress_text(text, PipelineSpec::parse("builtin-k3+varint+huffman"), vocab);
  for (int i = 0; i < 3000; ++i) {
    Bytes b = packed;
    const std::size_t at = rng() % b.size();
    switch (rng() % 3) {
      case 0: b[at] = static_cast<char>(b[at] ^ (1 + rng() % 255)); break;
      case 1: b.erase(at, 1); break;
      default: b.insert(b.begin() + static_cast<std::ptrdiff_t>(at), static_cast<char>(rng())); break;
    }
    REQUIRE_THROWS_AS(decompress_text(b, vocab), CorruptionError);
  }
}
