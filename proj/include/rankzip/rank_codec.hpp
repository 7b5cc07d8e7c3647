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
#include <string_view>
#include <vector>

#include "rankzip/bytes.hpp"
#include "rankzip/predictor.hpp"
#include "rankzip/tokenizer.hpp"

namespace rankzip {

struct RankStream {
  std::vector<std::uint32_t> ranks;
  std::uint64_t token_count = 0;
  Digest predictor_fingerprint{};
  Digest vocab_fingerprint{};

  friend bool operator==(const RankStream&, const RankStream&) = default;
};

enum class RankSerialization : std::uint8_t {
  none = 0,       // raw coder mode, no rank transform
  ascii_dot = 1,  // decimal ranks joined by '.', no trailing separator
  varint = 2,     // unsigned LEB128, no separators
};

std::string_view to_string(RankSerialization mode);
RankSerialization parse_serialization(std::string_view name);

// Text -> tokens -> ranks. The predictor is reset first and advanced by the
// true token after every step; it is left at the end-of-text state.
RankStream encode_ranks(BytesView text, Predictor& predictor, const Vocabulary& vocab);

// Inverse of encode_ranks. Refuses to run when either fingerprint differs
// from the one recorded in the stream.
Bytes decode_ranks(const RankStream& stream, Predictor& predictor, const Vocabulary& vocab);

Bytes serialize_ranks(const std::vector<std::uint32_t>& ranks, RankSerialization mode);
inline Bytes serialize_ranks(const RankStream& stream, RankSerialization mode) {
  return serialize_ranks(stream.ranks, mode);
}

// Fingerprints are not part of the serialized form and come back zeroed.
// Throws ParseError with the byte offset of the offending field.
RankStream deserialize_ranks(BytesView data, RankSerialization mode);

}  // namespace rankzip
