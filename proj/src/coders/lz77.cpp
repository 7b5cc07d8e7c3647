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

#include "rankzip/coders/lz77.hpp"

#include <algorithm>
#include <string>

#include "rankzip/error.hpp"

namespace rankzip::coders {
namespace {

constexpr std::string_view kMagic = "AZLZ";
constexpr std::uint8_t kVersion = 1;
constexpr unsigned kHashBits = 16;

std::uint32_t hash3(const unsigned char* p) {
  const std::uint32_t v = std::uint32_t{p[0]} << 16 | std::uint32_t{p[1]} << 8 | p[2];
  return (v * 2654435761u) >> (32 - kHashBits);
}

void check_window(std::uint32_t window) {
  if (window == 0 || window > kLz77MaxWindow)
    throw RangeError("lz77 window must be in 1.." + std::to_string(kLz77MaxWindow));
}

}  // namespace

std::vector<Lz77Token> lz77_parse(BytesView data, std::uint32_t window) {
  check_window(window);
  const auto* p = reinterpret_cast<const unsigned char*>(data.data());
  const std::size_t n = data.size();
  std::vector<std::int64_t> head(std::size_t{1} << kHashBits, -1);
  std::vector<std::int64_t> prev(n, -1);
  std::vector<Lz77Token> tokens;

  auto insert = [&](std::size_t i) {
    if (i + kLz77MinMatch > n) return;
    auto& h = head[hash3(p + i)];
    prev[i] = h;
    h = static_cast<std::int64_t>(i);
  };

  std::size_t i = 0;
  while (i < n) {
    std::size_t best_len = 0, best_dist = 0;
    if (i + kLz77MinMatch <= n) {
      const std::size_t limit = std::min<std::size_t>(kLz77MaxMatch, n - i);
      for (std::int64_t c = head[hash3(p + i)]; c >= 0; c = prev[static_cast<std::size_t>(c)]) {
        const auto cand = static_cast<std::size_t>(c);
        if (i - cand > window) break;
        std::size_t len = 0;
        while (len < limit && p[cand + len] == p[i + len]) ++len;
        if (len > best_len) {
          best_len = len;
          best_dist = i - cand;
          if (len == limit) break;
        }
      }
    }
    if (best_len >= kLz77MinMatch) {
      tokens.push_back(Lz77Token::ref(static_cast<std::uint32_t>(best_dist), static_cast<std::uint32_t>(best_len)));
      for (std::size_t k = 0; k < best_len; ++k) insert(i + k);
      i += best_len;
    } else {
      tokens.push_back(Lz77Token::lit(p[i]));
      insert(i);
      ++i;
    }
  }
  return tokens;
}

Bytes lz77_compress(BytesView data, std::uint32_t window) {
  const auto tokens = lz77_parse(data, window);
  Bytes out(kMagic);
  out.push_back(static_cast<char>(kVersion));
  ByteWriter w(out);
  w.u32(window);
  w.varint(data.size());
  for (std::size_t g = 0; g < tokens.size(); g += 8) {
    const std::size_t flag_at = out.size();
    out.push_back('\0');
    std::uint8_t flags = 0;
    for (std::size_t k = 0; k < 8 && g + k < tokens.size(); ++k) {
      const Lz77Token& t = tokens[g + k];
      if (t.is_literal()) {
        w.u8(t.literal);
      } else {
        flags = static_cast<std::uint8_t>(flags | 1u << k);
        w.u16(static_cast<std::uint16_t>(t.distance - 1));
        w.u8(static_cast<std::uint8_t>(t.length - kLz77MinMatch));
      }
    }
    out[flag_at] = static_cast<char>(flags);
  }
  return out;
}

Bytes lz77_decompress(BytesView data) {
  ByteReader in(data);
  expect_magic(in, kMagic, kVersion, "lz77");
  const std::uint32_t window = in.u32();
  if (window == 0 || window > kLz77MaxWindow) throw CorruptionError("lz77: bad window size");
  const std::uint64_t length = in.varint();
  if (length > in.remaining() * std::uint64_t{kLz77MaxMatch}) throw CorruptionError("lz77: length exceeds token stream");

  Bytes out;
  out.reserve(length);
  while (out.size() < length) {
    const std::uint8_t flags = in.u8();
    unsigned k = 0;
    for (; k < 8 && out.size() < length; ++k) {
      if (flags >> k & 1u) {
        const std::uint32_t distance = std::uint32_t{in.u16()} + 1;
        const std::uint32_t len = std::uint32_t{in.u8()} + kLz77MinMatch;
        if (distance > out.size() || distance > window) throw CorruptionError("lz77: back-reference before start of output");
        if (out.size() + len > length) throw CorruptionError("lz77: match runs past declared length");
        const std::size_t from = out.size() - distance;
        for (std::uint32_t j = 0; j < len; ++j) out.push_back(out[from + j]);
      } else {
        out.push_back(static_cast<char>(in.u8()));
      }
    }
    if (k < 8 && (flags >> k) != 0) throw CorruptionError("lz77: flag bits set past the last token");
  }
  if (!in.at_end()) throw CorruptionError("lz77: trailing data");
  return out;
}

}  // namespace rankzip::coders
