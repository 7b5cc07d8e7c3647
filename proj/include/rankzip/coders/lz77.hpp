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
#include <vector>

#include "rankzip/bytes.hpp"

namespace rankzip::coders {

inline constexpr std::uint32_t kLz77DefaultWindow = 32768;
inline constexpr std::uint32_t kLz77MaxWindow = 65536;
inline constexpr std::uint32_t kLz77MinMatch = 3;
inline constexpr std::uint32_t kLz77MaxMatch = 258;

// Either a literal byte or a back-reference (distance, length).
struct Lz77Token {
  std::uint32_t distance = 0;  // 0 marks a literal
  std::uint32_t length = 0;
  std::uint8_t literal = 0;

  bool is_literal() const noexcept { return distance == 0; }
  static Lz77Token lit(std::uint8_t b) { return {0, 0, b}; }
  static Lz77Token ref(std::uint32_t distance, std::uint32_t length) { return {distance, length, 0}; }

  friend bool operator==(const Lz77Token&, const Lz77Token&) = default;
};

// Greedy longest-match parse. At every position the longest match of at
// least kLz77MinMatch bytes starting within `window` bytes back is taken
// (the match may run into the bytes it copies); among equally long matches
// the nearest wins. Otherwise one literal is emitted.
std::vector<Lz77Token> lz77_parse(BytesView data, std::uint32_t window = kLz77DefaultWindow);

// Layout: "AZLZ" 0x01, u32 window, varint original length, then groups of
// up to eight tokens, each group led by a flag byte whose bit i (LSB first)
// is set when token i is a reference. A literal is one byte; a reference is
// u16 (distance - 1) followed by u8 (length - 3). Unused flag bits are zero.
Bytes lz77_compress(BytesView data, std::uint32_t window = kLz77DefaultWindow);
Bytes lz77_decompress(BytesView data);

}  // namespace rankzip::coders
