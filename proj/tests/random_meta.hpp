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

#pragma once

#include <random>

#include "rankzip/container.hpp"

namespace rankzip::testing {

inline Digest random_digest(std::mt19937_64& rng) {
  Digest d;
  for (auto& b : d) b = static_cast<std::uint8_t>(rng());
  return d;
}

// Self-consistent metadata covering all three predictor kinds.
inline ContainerMeta random_meta(std::mt19937_64& rng) {
  using coders::CoderId;
  ContainerMeta m;
  const auto kind = static_cast<PredictorKind>(rng() % 3);
  const auto coder = coders::kAllCoders[rng() % std::size(coders::kAllCoders)];
  m.coder = coders::CoderSpec::with_defaults(coder);
  if (coder == CoderId::lz77) m.coder.param = 1 + static_cast<std::uint32_t>(rng() % 65536);
  if (coder == CoderId::deflate) m.coder.param = static_cast<std::uint32_t>(rng() % 10);
  if (coder == CoderId::brotli) m.coder.param = static_cast<std::uint32_t>(rng() % 12);
  m.original_length = rng() >> 1;
  m.text_crc32 = static_cast<std::uint32_t>(rng());
  if (kind == PredictorKind::none) {
    m.predictor.kind = PredictorKind::none;
    m.predictor.id.clear();
    m.predictor.order = 0;
    m.predictor.window = 0;
    return m;
  }
  const bool batch = rng() % 2 == 0;
  const auto mode = batch ? InferenceMode::batch : InferenceMode::individual;
  const auto width = batch ? 1 + static_cast<std::uint32_t>(rng() % 64) : 1;
  if (kind == PredictorKind::builtin) {
    const auto order = static_cast<std::uint8_t>(rng() % (kMaxOrder + 1));
    m.predictor = PredictorDescriptor::builtin(order, order + static_cast<std::uint32_t>(rng() % 500), mode, width);
    m.predictor_fingerprint = m.predictor.fingerprint();
  } else {
    m.predictor.kind = PredictorKind::external;
    m.predictor.id = "model-" + std::to_string(rng() % 100000);
    m.predictor.order = 0;
    m.predictor.window = static_cast<std::uint32_t>(rng() % 2048);
    m.predictor.mode = mode;
    m.predictor.batch_width = width;
    m.predictor_fingerprint = random_digest(rng);
  }
  m.serialization = rng() % 2 ? RankSerialization::varint : RankSerialization::ascii_dot;
  m.vocab_fingerprint = random_digest(rng);
  m.token_count = m.original_length == 0 ? 0 : rng() % (m.original_length + 1);
  return m;
}

}  // namespace rankzip::testing
