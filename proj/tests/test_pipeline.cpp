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
#include "rankzip/pipeline.hpp"
#include "test_util.hpp"

using namespace rankzip;
using coders::CoderId;

TEST_CASE("pipeline names parse and print") {
  const auto a = PipelineSpec::parse("none+deflate");
  CHECK(a.predictor.kind == PredictorKind::none);
  CHECK(a.serialization == RankSerialization::none);
  CHECK(a.coder == coders::CoderSpec{CoderId::deflate, 9});
  CHECK(a.name() == "none+deflate-9");

  const auto b = PipelineSpec::parse("builtin-k2+ascii-dot+lz77-w4096");
  CHECK(b.predictor.order == 2);
  CHECK(b.serialization == RankSerialization::ascii_dot);
  CHECK(b.coder == coders::CoderSpec{CoderId::lz77, 4096});
  CHECK(PipelineSpec::parse(b.name()).name() == b.name());
  CHECK(PipelineSpec::parse("builtin+varint+adaptive-huffman").coder.id == CoderId::adaptive_huffman);
  CHECK(parse_coder_spec("brotli-5") == coders::CoderSpec{CoderId::brotli, 5});

  CHECK_THROWS_AS(PipelineSpec::parse("none+varint+deflate"), UsageError);
  CHECK_THROWS_AS(PipelineSpec::parse("builtin-k3+deflate"), UsageError);
  CHECK_THROWS_AS(PipelineSpec::parse("builtin-k3+none+deflate"), UsageError);
  CHECK_THROWS_AS(PipelineSpec::parse("builtin-k9+varint+deflate"), UsageError);
  CHECK_THROWS_AS(PipelineSpec::parse("none+zstd"), UsageError);
  CHECK_THROWS_AS(PipelineSpec::parse("none+deflate-10"), RangeError);
  CHECK_THROWS_AS(PipelineSpec::parse("none+lz77-w0"), RangeError);
  CHECK_THROWS_AS(PipelineSpec::parse("none+huffman-3"), RangeError);
  CHECK_THROWS_AS(PipelineSpec::parse("a+b+c+d"), UsageError);
}

TEST_CASE("every combination round trips on short texts") {
  std::mt19937_64 rng(80);
  const Vocabulary bytes = Vocabulary::byte_level();
  const Vocabulary english = Vocabulary::load(testing::english_vocab_path());
  const std::vector<Bytes> texts{"", "a", testing::random_utf8(rng, 700), testing::corpus("alice29.txt").substr(0, 4000)};
  for (CoderId id : coders::available_coders()) {
    const std::string coder(coders::to_string(id));
    for (const std::string pipeline :
         {"none+" + coder, "builtin-k3+varint+" + coder, "builtin-k3+ascii-dot+" + coder, "builtin-k0+varint+" + coder}) {
      for (const Vocabulary* v : {&bytes, &english}) {
        for (const auto& t : texts) {
          const Bytes packed = compress_text(t, PipelineSpec::parse(pipeline), *v);
          INFO(pipeline << " on " << t.size() << " bytes");
          REQUIRE(decompress_text(packed, *v) == t);
        }
      }
    }
  }
}

TEST_CASE("batch mode round trips and is recorded") {
  const Vocabulary vocab = Vocabulary::load(testing::english_vocab_path());
  const Bytes text = testing::corpus("plrabn12.txt").substr(0, 8000);
  PipelineSpec spec = PipelineSpec::parse("builtin-k3+varint+deflate");
  spec.predictor.mode = InferenceMode::batch;
  spec.predictor.batch_width = 16;
  const Bytes packed = compress_text(text, spec, vocab);
  const auto meta = unpack(packed).meta;
  CHECK(meta.predictor.mode == InferenceMode::batch);
  CHECK(meta.predictor.batch_width == 16);
  CHECK(decompress_text(packed, vocab) == text);
}

TEST_CASE("vocabulary and predictor mismatches are refused") {
  const Vocabulary bytes = Vocabulary::byte_level();
  const Vocabulary english = Vocabulary::load(testing::english_vocab_path());
  const Bytes text = testing::corpus("alice29.txt").substr(0, 2000);
  const Bytes packed = compress_text(text, PipelineSpec::parse("builtin-k3+varint+deflate"), english);
  try {
    decompress_text(packed, bytes);
    FAIL("decoded with the wrong vocabulary");
  } catch (const MismatchError& e) {
    CHECK(e.recorded_id() == "builtin-k3");
  }
  BuiltinModel other(english.size(), 2);
  DecompressOptions o;
  o.predictor = &other;
  CHECK_THROWS_AS(decompress_text(packed, english, o), MismatchError);
  BuiltinModel same(english.size(), 3);
  o.predictor = &same;
  CHECK(decompress_text(packed, english, o) == text);

  // Raw-coder mode ignores the vocabulary.
  CHECK(decompress_text(compress_text(text, PipelineSpec::parse("none+huffman"), english), bytes) == text);
}

TEST_CASE("a tampered rank is caught by the text CRC") {
  const Vocabulary vocab = Vocabulary::byte_level();
  const Bytes text = testing::corpus("asyoulik.txt").substr(0, 3000);
  const auto spec = PipelineSpec::parse("builtin-k3+varint+huffman");
  const Container c = unpack(compress_text(text, spec, vocab));
  RankStream ranks = deserialize_ranks(coders::decompress(c.meta.coder, c.payload), RankSerialization::varint);
  ranks.ranks[ranks.ranks.size() / 2] ^= 1;
  const Bytes forged = pack(c.meta, coders::compress(c.meta.coder, serialize_ranks(ranks, RankSerialization::varint)));
  try {
    decompress_text(forged, vocab);
    FAIL("forged ranks decoded");
  } catch (const ContainerError& e) {
    CHECK(e.kind() == ContainerError::Kind::crc_mismatch);
  }

  ranks.ranks.pop_back();
  const Bytes short_stream =
      pack(c.meta, coders::compress(c.meta.coder, serialize_ranks(ranks, RankSerialization::varint)));
  try {
    decompress_text(short_stream, vocab);
    FAIL("short rank stream decoded");
  } catch (const ContainerError& e) {
    CHECK(e.kind() == ContainerError::Kind::malformed);
  }
}

TEST_CASE("rank transform beats plain gzip on English") {
  const Vocabulary vocab = Vocabulary::load(testing::english_vocab_path());
  const Bytes text = testing::corpus("alice29.txt");
  const auto rank = compress_text(text, PipelineSpec::parse("builtin-k3+varint+deflate"), vocab).size();
  const auto gzip = compress_text(text, PipelineSpec::parse("none+deflate"), vocab).size();
  MESSAGE("alice29: rank+deflate " << rank << " bytes, deflate " << gzip << " bytes");
  CHECK(rank < gzip);
}
