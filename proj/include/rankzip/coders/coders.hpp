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
#include <string_view>
#include <vector>

#include "rankzip/bytes.hpp"

namespace rankzip::coders {

enum class CoderId : std::uint8_t {
  huffman = 1,
  adaptive_huffman = 2,
  arithmetic = 3,
  lz77 = 4,
  deflate = 5,
  brotli = 6,
};

inline constexpr CoderId kAllCoders[] = {CoderId::huffman, CoderId::adaptive_huffman, CoderId::arithmetic,
                                         CoderId::lz77,    CoderId::deflate,          CoderId::brotli};

std::string_view to_string(CoderId id);
// Throws UsageError for unknown names.
CoderId parse_coder(std::string_view name);

// A coder plus its one parameter: LZ77 window, DEFLATE level or Brotli
// quality. The other coders take none and store 0.
struct CoderSpec {
  CoderId id = CoderId::deflate;
  std::uint32_t param = 0;

  static CoderSpec with_defaults(CoderId id);
  // Throws RangeError when param is out of range for the coder.
  void validate() const;
  std::string name() const;

  friend bool operator==(const CoderSpec&, const CoderSpec&) = default;
};

bool coder_available(CoderId id) noexcept;
std::vector<CoderId> available_coders();

// Throws CapabilityError naming the available coders when `id` was not built.
void require_available(CoderId id);

Bytes compress(const CoderSpec& spec, BytesView data);
Bytes decompress(const CoderSpec& spec, BytesView data);

}  // namespace rankzip::coders
