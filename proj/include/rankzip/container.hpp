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

#include <cstdint>
#include <string>

#include "rankzip/bytes.hpp"
#include "rankzip/coders/coders.hpp"
#include "rankzip/predictor.hpp"
#include "rankzip/rank_codec.hpp"

namespace rankzip {

inline constexpr std::string_view kContainerMagic = "AZIP";
inline constexpr std::uint8_t kContainerVersion = 1;
// Fixed bytes around the predictor id and the payload.
inline constexpr std::size_t kContainerFixedOverhead = 120;

struct ContainerMeta {
  PredictorDescriptor predictor;  // kind none in raw-coder mode
  Digest predictor_fingerprint{};
  Digest vocab_fingerprint{};
  RankSerialization serialization = RankSerialization::none;
  coders::CoderSpec coder;
  std::uint64_t token_count = 0;
  std::uint64_t original_length = 0;
  std::uint32_t text_crc32 = 0;

  friend bool operator==(const ContainerMeta&, const ContainerMeta&) = default;
};

struct Container {
  ContainerMeta meta;
  Bytes payload;

  friend bool operator==(const Container&, const Container&) = default;
};

// Throws UsageError when meta is inconsistent (e.g. a predictor without a
// rank serialization).
Bytes pack(const ContainerMeta& meta, BytesView payload);

// Throws ContainerError: bad_magic, bad_version, truncated, malformed or
// checksum_mismatch (the trailing CRC-32 over the container bytes).
Container unpack(BytesView data);

}  // namespace rankzip
