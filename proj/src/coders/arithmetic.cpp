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

#include "rankzip/coders/arithmetic.hpp"

#include <algorithm>

#include "rankzip/error.hpp"

namespace rankzip::coders {
namespace {

constexpr std::string_view kMagic = "AZAC";
constexpr std::uint8_t kVersion = 1;

constexpr unsigned kWindowBits = 48;
constexpr std::uint64_t kWindowMask = (std::uint64_t{1} << kWindowBits) - 1;
constexpr std::uint64_t kTop = std::uint64_t{1} << (kWindowBits - 8);
constexpr std::uint64_t kLowMask = kTop - 1;
constexpr unsigned kCodeBytes = kWindowBits / 8;

class RangeEncoder {
 public:
  explicit RangeEncoder(Bytes& out) : out_(out) {}

  void encode(std::uint32_t cum, std::uint32_t freq, std::uint32_t total) {
    const std::uint64_t r = range_ / total;
    low_ += r * cum;
    range_ = r * freq;
    while (range_ < kTop) {
      range_ <<= 8;
      shift_low();
    }
  }

  // Emits the shortest tail that still lands inside the final interval:
  // round low up to a multiple of kTop, so only its top byte is nonzero.
  void finish() {
    low_ = (low_ + kLowMask) & ~kLowMask;
    shift_low();
    shift_low();
    while (out_.size() > start_ && out_.back() == '\0') out_.pop_back();
  }

 private:
  void shift_low() {
    if (low_ < (std::uint64_t{0xFF} << (kWindowBits - 8)) || low_ > kWindowMask) {
      const auto carry = static_cast<std::uint8_t>(low_ >> kWindowBits);
      std::uint8_t pending = cache_;
      do {
        emit(static_cast<std::uint8_t>(pending + carry));
        pending = 0xFF;
      } while (--cache_size_ != 0);
      cache_ = static_cast<std::uint8_t>(low_ >> (kWindowBits - 8));
    }
    ++cache_size_;
    low_ = (low_ & kLowMask) << 8;
  }

  void emit(std::uint8_t b) {
    // The first byte carries the integer part of the code value, always 0.
    if (first_) {
      first_ = false;
      return;
    }
    out_.push_back(static_cast<char>(b));
  }

  Bytes& out_;
  std::size_t start_ = out_.size();
  std::uint64_t low_ = 0;
  std::uint64_t range_ = kWindowMask;
  std::uint8_t cache_ = 0;
  std::uint64_t cache_size_ = 1;
  bool first_ = true;
};

class RangeDecoder {
 public:
  explicit RangeDecoder(BytesView data) : data_(data) {
    for (unsigned i = 0; i < kCodeBytes; ++i) code_ = code_ << 8 | next();
  }

  std::uint32_t target(std::uint32_t total) {
    r_ = range_ / total;
    const std::uint64_t v = code_ / r_;
    if (v >= total) throw CorruptionError("arithmetic: code value outside the model interval");
    return static_cast<std::uint32_t>(v);
  }

  void consume(std::uint32_t cum, std::uint32_t freq) {
    code_ -= r_ * cum;
    range_ = r_ * freq;
    while (range_ < kTop) {
      range_ <<= 8;
      code_ = code_ << 8 | next();
    }
  }

 private:
  std::uint8_t next() {
    const std::size_t at = pos_++;
    return at < data_.size() ? static_cast<std::uint8_t>(data_[at]) : 0;
  }

  BytesView data_;
  std::size_t pos_ = 0;
  std::uint64_t code_ = 0;
  std::uint64_t range_ = kWindowMask;
  std::uint64_t r_ = 1;
};

}  // namespace

AdaptiveByteModel::AdaptiveByteModel() {
  counts_.fill(1);
  rebuild();
}

void AdaptiveByteModel::rebuild() {
  tree_.fill(0);
  total_ = 0;
  for (unsigned s = 0; s < kSymbols; ++s) {
    total_ += counts_[s];
    for (unsigned i = s + 1; i <= kSymbols; i += i & (0u - i)) tree_[i] += counts_[s];
  }
}

std::uint32_t AdaptiveByteModel::cumulative(unsigned symbol) const {
  std::uint32_t sum = 0;
  for (unsigned i = symbol; i > 0; i -= i & (0u - i)) sum += tree_[i];
  return sum;
}

unsigned AdaptiveByteModel::find(std::uint32_t target) const {
  unsigned pos = 0;
  for (unsigned step = 256; step > 0; step >>= 1) {
    if (pos + step <= kSymbols && tree_[pos + step] <= target) {
      pos += step;
      target -= tree_[pos];
    }
  }
  return pos;
}

void AdaptiveByteModel::update(unsigned symbol) {
  ++counts_[symbol];
  ++total_;
  for (unsigned i = symbol + 1; i <= kSymbols; i += i & (0u - i)) ++tree_[i];
  if (total_ >= kMaxTotal) {
    for (auto& c : counts_) c = (c + 1) / 2;
    rebuild();
  }
}

std::size_t arithmetic_header_size(std::uint64_t length) {
  Bytes header;
  ByteWriter(header).varint(length);
  return kMagic.size() + 1 + header.size();
}

Bytes arithmetic_compress(BytesView data) {
  Bytes out(kMagic);
  out.push_back(static_cast<char>(kVersion));
  ByteWriter(out).varint(data.size());

  AdaptiveByteModel model;
  RangeEncoder enc(out);
  auto code = [&](unsigned s) {
    enc.encode(model.cumulative(s), model.frequency(s), model.total());
    model.update(s);
  };
  for (char c : data) code(static_cast<std::uint8_t>(c));
  code(AdaptiveByteModel::kEndOfStream);
  enc.finish();
  return out;
}

Bytes arithmetic_decompress(BytesView data) {
  ByteReader in(data);
  expect_magic(in, kMagic, kVersion, "arithmetic");
  const std::uint64_t length = in.varint();
  BytesView coded = data.substr(in.offset());

  AdaptiveByteModel model;
  RangeDecoder dec(coded);
  // Re-encode alongside; only the canonical coded form is accepted.
  Bytes canonical;
  RangeEncoder mirror(canonical);
  Bytes out;
  out.reserve(std::min<std::uint64_t>(length, std::uint64_t{1} << 24));
  for (;;) {
    const std::uint32_t target = dec.target(model.total());
    const unsigned s = model.find(target);
    dec.consume(model.cumulative(s), model.frequency(s));
    mirror.encode(model.cumulative(s), model.frequency(s), model.total());
    model.update(s);
    if (s == AdaptiveByteModel::kEndOfStream) break;
    if (out.size() == length) throw CorruptionError("arithmetic: missing end-of-stream marker");
    out.push_back(static_cast<char>(s));
  }
  if (out.size() != length) throw CorruptionError("arithmetic: stream ended early");
  mirror.finish();
  if (canonical != coded) throw CorruptionError("arithmetic: coded bytes are not the canonical encoding");
  return out;
}

}  // namespace rankzip::coders
