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

#include "rankzip/bytes.hpp"

#include "rankzip/hashing.hpp"

#include <openssl/evp.h>
#include <zlib.h>

namespace rankzip {

std::string to_hex(std::span<const std::uint8_t> bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (std::uint8_t b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xF]);
  }
  return out;
}

Digest digest_from_hex(std::string_view hex) {
  Digest d{};
  if (hex.size() != d.size() * 2) throw ParseError("fingerprint must be 64 hex digits", 0);
  auto nibble = [&](std::size_t i) -> std::uint8_t {
    char c = hex[i];
    if (c >= '0' && c <= '9') return static_cast<std::uint8_t>(c - '0');
    if (c >= 'a' && c <= 'f') return static_cast<std::uint8_t>(c - 'a' + 10);
    if (c >= 'A' && c <= 'F') return static_cast<std::uint8_t>(c - 'A' + 10);
    throw ParseError("bad hex digit", i);
  };
  for (std::size_t i = 0; i < d.size(); ++i)
    d[i] = static_cast<std::uint8_t>(nibble(2 * i) << 4 | nibble(2 * i + 1));
  return d;
}

void ByteWriter::varint(std::uint64_t v) {
  while (v >= 0x80) {
    u8(static_cast<std::uint8_t>(v | 0x80));
    v >>= 7;
  }
  u8(static_cast<std::uint8_t>(v));
}

std::uint8_t ByteReader::u8() {
  if (pos_ >= data_.size()) throw CorruptionError("unexpected end of data at offset " + std::to_string(pos_));
  return static_cast<std::uint8_t>(data_[pos_++]);
}

std::uint64_t ByteReader::get_le(int width) {
  if (remaining() < static_cast<std::size_t>(width))
    throw CorruptionError("unexpected end of data at offset " + std::to_string(pos_));
  std::uint64_t v = 0;
  for (int i = 0; i < width; ++i)
    v |= static_cast<std::uint64_t>(static_cast<std::uint8_t>(data_[pos_ + i])) << (8 * i);
  pos_ += width;
  return v;
}

std::uint64_t ByteReader::varint() {
  const std::size_t start = pos_;
  std::uint64_t v = 0;
  for (int shift = 0; shift < 64; shift += 7) {
    if (pos_ >= data_.size()) throw ParseError("truncated varint", start);
    auto b = static_cast<std::uint8_t>(data_[pos_++]);
    if (shift == 63 && b > 1) throw ParseError("varint overflows 64 bits", start);
    v |= static_cast<std::uint64_t>(b & 0x7F) << shift;
    if ((b & 0x80) == 0) return v;
  }
  throw ParseError("varint overflows 64 bits", start);
}

BytesView ByteReader::raw(std::size_t n) {
  if (remaining() < n) throw CorruptionError("unexpected end of data at offset " + std::to_string(pos_));
  BytesView out = data_.substr(pos_, n);
  pos_ += n;
  return out;
}

Digest ByteReader::digest() {
  BytesView view = raw(32);
  Digest d{};
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = static_cast<std::uint8_t>(view[i]);
  return d;
}

void expect_magic(ByteReader& in, std::string_view magic, std::uint8_t version, std::string_view what) {
  if (in.remaining() < magic.size() + 1) throw CorruptionError(std::string(what) + ": stream too short for header");
  if (in.raw(magic.size()) != magic) throw CorruptionError(std::string(what) + ": bad magic");
  if (std::uint8_t v = in.u8(); v != version)
    throw CorruptionError(std::string(what) + ": unsupported version " + std::to_string(v));
}

Digest sha256(BytesView data) {
  Digest d{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), d.data(), &len, EVP_sha256(), nullptr) != 1 || len != d.size())
    throw Error("SHA-256 computation failed");
  return d;
}

std::uint32_t crc32(BytesView data) { return crc32(0, data); }

std::uint32_t crc32(std::uint32_t running, BytesView data) {
  // zlib takes uInt lengths; feed large buffers in pieces.
  uLong crc = running;
  const auto* p = reinterpret_cast<const Bytef*>(data.data());
  std::size_t left = data.size();
  while (left > 0) {
    auto chunk = static_cast<uInt>(std::min<std::size_t>(left, 1u << 30));
    crc = ::crc32(crc, p, chunk);
    p += chunk;
    left -= chunk;
  }
  return static_cast<std::uint32_t>(crc);
}

}  // namespace rankzip
