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

#include <doctest.h>

#include "rankzip/bytes.hpp"
#include "rankzip/hashing.hpp"

using namespace rankzip;

namespace {

Bytes varint_of(std::uint64_t v) {
  Bytes out;
  ByteWriter(out).varint(v);
  return out;
}

}  // namespace

TEST_CASE("varint encodings") {
  CHECK(varint_of(0) == Bytes("\x00", 1));
  CHECK(varint_of(127) == "\x7f");
  CHECK(varint_of(128) == "\x80\x01");
  CHECK(varint_of(300) == "\xac\x02");
  CHECK(varint_of(UINT64_MAX).size() == 10);
  for (std::uint64_t v : std::initializer_list<std::uint64_t>{0ull, 1ull, 127ull, 128ull, 300ull, 16383ull, 16384ull, 1ull << 35, UINT64_MAX}) {
    Bytes b = varint_of(v);
    ByteReader in(b);
    CHECK(in.varint() == v);
    CHECK(in.at_end());
  }
}

TEST_CASE("varint rejects truncation and overflow") {
  ByteReader truncated(BytesView("\x80\x80", 2));
  CHECK_THROWS_AS(truncated.varint(), CorruptionError);
  const Bytes eleven(11, '\xff');
  ByteReader overlong(eleven);
  CHECK_THROWS_AS(overlong.varint(), CorruptionError);
}

TEST_CASE("little-endian integers") {
  Bytes b;
  ByteWriter w(b);
  w.u16(0x0102);
  w.u32(0x03040506);
  w.u64(0x0708090a0b0c0d0eull);
  CHECK(b == Bytes("\x02\x01\x06\x05\x04\x03\x0e\x0d\x0c\x0b\x0a\x09\x08\x07", 14));
  ByteReader r(b);
  CHECK(r.u16() == 0x0102);
  CHECK(r.u32() == 0x03040506u);
  CHECK(r.u64() == 0x0708090a0b0c0d0eull);
  CHECK_THROWS_AS(r.u8(), CorruptionError);
}

TEST_CASE("sha256 and crc32 known vectors") {
  CHECK(to_hex(sha256("abc")) == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(to_hex(sha256("")) == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(crc32("123456789") == 0xCBF43926u);
  CHECK(crc32("") == 0u);
  CHECK(crc32(crc32("1234"), "56789") == 0xCBF43926u);
}

TEST_CASE("hex round trip") {
  const Digest d = sha256("rankzip");
  CHECK(digest_from_hex(to_hex(d)) == d);
  CHECK_THROWS(digest_from_hex("abc"));
  CHECK_THROWS(digest_from_hex(std::string(64, 'g')));
}
