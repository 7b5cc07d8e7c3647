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

#include "rankzip/bytes.hpp"
#include "rankzip/error.hpp"

namespace rankzip::coders {

// MSB-first bit packer; the final byte is zero-padded.
class BitWriter {
 public:
  explicit BitWriter(Bytes& out) : out_(out) {}

  void put(std::uint64_t bits, unsigned count) {
    for (unsigned i = count; i-- > 0;) put_bit(static_cast<unsigned>(bits >> i) & 1u);
  }

  void put_bit(unsigned bit) {
    acc_ = static_cast<std::uint8_t>(acc_ << 1 | (bit & 1u));
    ++bits_;
    if (++filled_ == 8) {
      out_.push_back(static_cast<char>(acc_));
      acc_ = 0;
      filled_ = 0;
    }
  }

  void flush() {
    if (filled_ == 0) return;
    out_.push_back(static_cast<char>(acc_ << (8 - filled_)));
    acc_ = 0;
    filled_ = 0;
  }

  std::uint64_t bits_written() const noexcept { return bits_; }

 private:
  Bytes& out_;
  std::uint8_t acc_ = 0;
  unsigned filled_ = 0;
  std::uint64_t bits_ = 0;
};

class BitReader {
 public:
  explicit BitReader(BytesView data) : data_(data) {}

  unsigned get_bit() {
    if (pos_ >= data_.size() * 8) throw CorruptionError("bitstream truncated");
    unsigned bit = (static_cast<std::uint8_t>(data_[pos_ / 8]) >> (7 - pos_ % 8)) & 1u;
    ++pos_;
    return bit;
  }

  std::uint64_t get(unsigned count) {
    std::uint64_t v = 0;
    for (unsigned i = 0; i < count; ++i) v = v << 1 | get_bit();
    return v;
  }

  // Valid end: only zero padding remains in the current byte and no
  // further bytes follow.
  void expect_end() const {
    if ((pos_ + 7) / 8 != data_.size()) throw CorruptionError("trailing data after bitstream");
    for (std::size_t p = pos_; p < data_.size() * 8; ++p)
      if ((static_cast<std::uint8_t>(data_[p / 8]) >> (7 - p % 8)) & 1u) throw CorruptionError("nonzero padding bits");
  }

  std::uint64_t position() const noexcept { return pos_; }

 private:
  BytesView data_;
  std::uint64_t pos_ = 0;
};

}  // namespace rankzip::coders
