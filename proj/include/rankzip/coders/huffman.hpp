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
#include <span>
#include <vector>

#include "rankzip/bytes.hpp"

namespace rankzip::coders {

inline constexpr unsigned kMaxHuffmanCodeLength = 64;

// Optimal prefix-code lengths for the given symbol frequencies, built
// bottom-up by repeatedly joining the two lightest nodes (ties: lighter
// first, then older node). Zero-frequency symbols get length 0. A lone
// symbol gets a 1-bit code.
std::vector<std::uint8_t> huffman_code_lengths(std::span<const std::uint64_t> frequencies);

// Canonical codes for the given lengths (shorter codes first, then by
// symbol). Entries with length 0 get code 0.
std::vector<std::uint64_t> canonical_codes(std::span<const std::uint8_t> lengths);

// Layout: "AZHF" 0x01, varint original length, then when non-empty:
// u8 (symbol count - 1), (symbol u8, length u8) pairs in ascending symbol
// order, canonical codes MSB-first, zero padded.
Bytes huffman_compress(BytesView data);
Bytes huffman_decompress(BytesView data);

}  // namespace rankzip::coders
