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

namespace rankzip::coders {

inline constexpr int kDefaultDeflateLevel = 9;
inline constexpr int kDefaultBrotliQuality = 11;
inline constexpr int kBrotliWindowBits = 22;

// gzip member (RFC 1952) produced by zlib: no name, no comment, mtime 0.
Bytes deflate_compress(BytesView data, int level = kDefaultDeflateLevel);
// Accepts exactly one gzip member and nothing after it.
Bytes deflate_decompress(BytesView data);

bool brotli_available() noexcept;
// Raw Brotli stream (RFC 7932), generic mode.
Bytes brotli_compress(BytesView data, int quality = kDefaultBrotliQuality);
Bytes brotli_decompress(BytesView data);

}  // namespace rankzip::coders
