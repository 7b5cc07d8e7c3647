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

#include <array>
#include <cstdint>

#include "rankzip/bytes.hpp"

namespace rankzip::coders {

// Adaptive order-0 frequency model over the 256 byte values plus an
// end-of-stream symbol. Every count starts at 1 (Laplace) and grows by 1
// per occurrence; when the total reaches kMaxTotal all counts are halved,
// rounding up.
class AdaptiveByteModel {
 public:
  static constexpr unsigned kSymbols = 257;
  static constexpr unsigned kEndOfStream = 256;
  static constexpr std::uint32_t kMaxTotal = 1u << 24;

  AdaptiveByteModel();

  std::uint32_t total() const noexcept { return total_; }
  std::uint32_t frequency(unsigned symbol) const noexcept { return counts_[symbol]; }
  std::uint32_t cumulative(unsigned symbol) const;  // sum of counts below symbol

  // Symbol whose cumulative interval contains target (< total()).
  unsigned find(std::uint32_t target) const;

  void update(unsigned symbol);

 private:
  void rebuild();

  std::array<std::uint32_t, kSymbols> counts_{};
  std::array<std::uint32_t, kSymbols + 1> tree_{};  // Fenwick, 1-based
  std::uint32_t total_ = 0;
};

// Range coder with a 48-bit window: the range stays in [2^40, 2^48) after
// renormalization and bytes leave from the top, with carries propagated
// into already-produced bytes.
//
// Layout: "AZAC" 0x01, varint original length, coded bytes. The coded
// bytes omit the always-zero leading byte and any trailing zero bytes; the
// decoder reads missing bytes as zero. The stream ends with the
// end-of-stream symbol, which must appear exactly after `length` bytes.
Bytes arithmetic_compress(BytesView data);
Bytes arithmetic_decompress(BytesView data);

// Size of the fixed header in front of the coded bytes for a given input
// length; lets tests measure the payload alone.
std::size_t arithmetic_header_size(std::uint64_t length);

}  // namespace rankzip::coders
