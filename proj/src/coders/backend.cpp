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

#include "rankzip/coders/backend.hpp"

#include <zlib.h>

#include <algorithm>
#include <array>
#include <string>

#include "rankzip/error.hpp"

#ifdef RANKZIP_HAVE_BROTLI
#include <brotli/decode.h>
#include <brotli/encode.h>
#endif

namespace rankzip::coders {
namespace {

constexpr int kGzipWindowBits = 15 + 16;
constexpr std::size_t kChunk = 1 << 16;

}  // namespace

Bytes deflate_compress(BytesView data, int level) {
  if (level < 0 || level > 9) throw RangeError("deflate level must be in 0..9");
  z_stream zs{};
  if (deflateInit2(&zs, level, Z_DEFLATED, kGzipWindowBits, 8, Z_DEFAULT_STRATEGY) != Z_OK)
    throw Error("zlib: deflateInit2 failed");
  Bytes out;
  std::array<unsigned char, kChunk> buf;
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(data.data()));
  std::size_t left = data.size();
  int rc = Z_OK;
  do {
    const auto take = static_cast<uInt>(std::min<std::size_t>(left, 1u << 30));
    if (zs.avail_in == 0) {
      zs.avail_in = take;
      left -= take;
    }
    const int flush = left == 0 ? Z_FINISH : Z_NO_FLUSH;
    do {
      zs.next_out = buf.data();
      zs.avail_out = buf.size();
      rc = deflate(&zs, flush);
      out.append(reinterpret_cast<char*>(buf.data()), buf.size() - zs.avail_out);
    } while (zs.avail_out == 0);
  } while (rc != Z_STREAM_END);
  deflateEnd(&zs);
  return out;
}

Bytes deflate_decompress(BytesView data) {
  z_stream zs{};
  if (inflateInit2(&zs, kGzipWindowBits) != Z_OK) throw Error("zlib: inflateInit2 failed");
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(data.data()));
  zs.avail_in = static_cast<uInt>(data.size());
  if (zs.avail_in != data.size()) {
    inflateEnd(&zs);
    throw CorruptionError("gzip: payload too large");
  }
  Bytes out;
  std::array<unsigned char, kChunk> buf;
  int rc;
  do {
    zs.next_out = buf.data();
    zs.avail_out = buf.size();
    rc = inflate(&zs, Z_NO_FLUSH);
    out.append(reinterpret_cast<char*>(buf.data()), buf.size() - zs.avail_out);
  } while (rc == Z_OK);
  const uInt trailing = zs.avail_in;
  const std::string msg = zs.msg ? zs.msg : "";
  inflateEnd(&zs);
  if (rc != Z_STREAM_END) throw CorruptionError("gzip: " + (msg.empty() ? std::string("truncated stream") : msg));
  if (trailing != 0) throw CorruptionError("gzip: trailing data");
  return out;
}

#ifdef RANKZIP_HAVE_BROTLI

bool brotli_available() noexcept { return true; }

Bytes brotli_compress(BytesView data, int quality) {
  if (quality < BROTLI_MIN_QUALITY || quality > BROTLI_MAX_QUALITY) throw RangeError("brotli quality must be in 0..11");
  std::size_t size = BrotliEncoderMaxCompressedSize(data.size());
  if (size == 0) throw Error("brotli: input too large");
  Bytes out(size, '\0');
  if (!BrotliEncoderCompress(quality, kBrotliWindowBits, BROTLI_MODE_GENERIC, data.size(),
                             reinterpret_cast<const uint8_t*>(data.data()), &size,
                             reinterpret_cast<uint8_t*>(out.data())))
    throw Error("brotli: compression failed");
  out.resize(size);
  return out;
}

Bytes brotli_decompress(BytesView data) {
  BrotliDecoderState* st = BrotliDecoderCreateInstance(nullptr, nullptr, nullptr);
  if (!st) throw Error("brotli: out of memory");
  const auto* next_in = reinterpret_cast<const uint8_t*>(data.data());
  std::size_t avail_in = data.size();
  Bytes out;
  std::array<uint8_t, kChunk> buf;
  BrotliDecoderResult rc;
  do {
    uint8_t* next_out = buf.data();
    std::size_t avail_out = buf.size();
    rc = BrotliDecoderDecompressStream(st, &avail_in, &next_in, &avail_out, &next_out, nullptr);
    out.append(reinterpret_cast<char*>(buf.data()), buf.size() - avail_out);
  } while (rc == BROTLI_DECODER_RESULT_NEEDS_MORE_OUTPUT);
  const std::string err = BrotliDecoderErrorString(BrotliDecoderGetErrorCode(st));
  BrotliDecoderDestroyInstance(st);
  if (rc == BROTLI_DECODER_RESULT_NEEDS_MORE_INPUT) throw CorruptionError("brotli: truncated stream");
  if (rc != BROTLI_DECODER_RESULT_SUCCESS) throw CorruptionError("brotli: " + err);
  if (avail_in != 0) throw CorruptionError("brotli: trailing data");
  return out;
}

#else

bool brotli_available() noexcept { return false; }

Bytes brotli_compress(BytesView, int) { throw CapabilityError("brotli backend not built"); }
Bytes brotli_decompress(BytesView) { throw CapabilityError("brotli backend not built"); }

#endif

}  // namespace rankzip::coders
