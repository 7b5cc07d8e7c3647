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

#include "rankzip/coders/huffman.hpp"

#include <algorithm>
#include <array>
#include <queue>
#include <tuple>

#include "rankzip/coders/bit_io.hpp"
#include "rankzip/error.hpp"

namespace rankzip::coders {
namespace {

constexpr std::string_view kMagic = "AZHF";
constexpr std::uint8_t kVersion = 1;

}  // namespace

std::vector<std::uint8_t> huffman_code_lengths(std::span<const std::uint64_t> frequencies) {
  const std::size_t n = frequencies.size();
  std::vector<std::uint8_t> lengths(n, 0);

  // Node ids: leaves are symbol indices, internal nodes follow in creation order.
  std::vector<std::size_t> parent(n, 0);
  using Item = std::tuple<std::uint64_t, std::size_t>;  // (weight, node id)
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  std::size_t used = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (frequencies[s] == 0) continue;
    heap.emplace(frequencies[s], s);
    ++used;
  }
  if (used == 0) return lengths;
  if (used == 1) {
    lengths[std::get<1>(heap.top())] = 1;
    return lengths;
  }

  std::size_t next_id = n;
  while (heap.size() > 1) {
    auto [wa, a] = heap.top();
    heap.pop();
    auto [wb, b] = heap.top();
    heap.pop();
    parent.resize(next_id + 1, 0);
    parent[a] = next_id;
    parent[b] = next_id;
    heap.emplace(wa + wb, next_id);
    ++next_id;
  }
  const std::size_t root = next_id - 1;

  // Depth of a node = depth of its parent + 1; parents always have larger ids.
  std::vector<unsigned> depth(next_id, 0);
  for (std::size_t id = root; id-- > 0;) {
    if (id < n && frequencies[id] == 0) continue;
    depth[id] = depth[parent[id]] + 1;
  }
  for (std::size_t s = 0; s < n; ++s) {
    if (frequencies[s] == 0) continue;
    if (depth[s] > kMaxHuffmanCodeLength) throw Error("Huffman code length exceeds 64 bits");
    lengths[s] = static_cast<std::uint8_t>(depth[s]);
  }
  return lengths;
}

std::vector<std::uint64_t> canonical_codes(std::span<const std::uint8_t> lengths) {
  std::vector<std::size_t> order;
  for (std::size_t s = 0; s < lengths.size(); ++s)
    if (lengths[s] > 0) order.push_back(s);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return lengths[a] < lengths[b]; });

  std::vector<std::uint64_t> codes(lengths.size(), 0);
  std::uint64_t code = 0;
  unsigned prev_len = 0;
  for (std::size_t s : order) {
    if (prev_len != 0) code = (code + 1) << (lengths[s] - prev_len);
    codes[s] = code;
    prev_len = lengths[s];
  }
  return codes;
}

Bytes huffman_compress(BytesView data) {
  Bytes out(kMagic);
  out.push_back(static_cast<char>(kVersion));
  ByteWriter w(out);
  w.varint(data.size());
  if (data.empty()) return out;

  std::array<std::uint64_t, 256> freq{};
  for (char c : data) ++freq[static_cast<std::uint8_t>(c)];
  auto lengths = huffman_code_lengths(freq);
  auto codes = canonical_codes(lengths);

  std::size_t used = static_cast<std::size_t>(std::count_if(lengths.begin(), lengths.end(), [](auto l) { return l > 0; }));
  w.u8(static_cast<std::uint8_t>(used - 1));
  for (std::size_t s = 0; s < 256; ++s) {
    if (lengths[s] == 0) continue;
    w.u8(static_cast<std::uint8_t>(s));
    w.u8(lengths[s]);
  }

  BitWriter bits(out);
  for (char c : data) {
    auto s = static_cast<std::uint8_t>(c);
    bits.put(codes[s], lengths[s]);
  }
  bits.flush();
  return out;
}

Bytes huffman_decompress(BytesView data) {
  ByteReader in(data);
  expect_magic(in, kMagic, kVersion, "huffman");
  const std::uint64_t length = in.varint();
  Bytes out;
  if (length == 0) {
    if (!in.at_end()) throw CorruptionError("huffman: trailing data");
    return out;
  }

  const std::size_t used = std::size_t{in.u8()} + 1;
  std::array<std::uint8_t, 256> lengths{};
  int last_symbol = -1;
  unsigned __int128 kraft = 0;
  for (std::size_t i = 0; i < used; ++i) {
    std::uint8_t s = in.u8();
    std::uint8_t len = in.u8();
    if (static_cast<int>(s) <= last_symbol) throw CorruptionError("huffman: code table out of order");
    if (len == 0 || len > kMaxHuffmanCodeLength) throw CorruptionError("huffman: bad code length");
    last_symbol = s;
    lengths[s] = len;
    kraft += static_cast<unsigned __int128>(1) << (kMaxHuffmanCodeLength - len);
  }
  const unsigned __int128 full = static_cast<unsigned __int128>(1) << kMaxHuffmanCodeLength;
  if (used == 1 ? lengths[static_cast<std::size_t>(last_symbol)] != 1 : kraft != full)
    throw CorruptionError("huffman: code table is not a complete prefix code");

  // Canonical decoding tables.
  std::array<std::uint64_t, kMaxHuffmanCodeLength + 2> count{}, first_code{}, first_index{};
  std::vector<std::uint8_t> sorted;
  for (unsigned len = 1; len <= kMaxHuffmanCodeLength; ++len)
    for (std::size_t s = 0; s < 256; ++s)
      if (lengths[s] == len) {
        sorted.push_back(static_cast<std::uint8_t>(s));
        ++count[len];
      }
  std::uint64_t code = 0, index = 0;
  for (unsigned len = 1; len <= kMaxHuffmanCodeLength; ++len) {
    first_code[len] = code;
    first_index[len] = index;
    code = (code + count[len]) << 1;
    index += count[len];
  }

  if (length > (data.size() - in.offset()) * 8) throw CorruptionError("huffman: length exceeds bitstream");
  BitReader bits(data.substr(in.offset()));
  out.reserve(length);
  for (std::uint64_t i = 0; i < length; ++i) {
    std::uint64_t c = 0;
    unsigned len = 0;
    for (;;) {
      c = c << 1 | bits.get_bit();
      if (++len > kMaxHuffmanCodeLength) throw CorruptionError("huffman: invalid code");
      if (c - first_code[len] < count[len] && c >= first_code[len]) {
        out.push_back(static_cast<char>(sorted[first_index[len] + (c - first_code[len])]));
        break;
      }
    }
  }
  bits.expect_end();
  return out;
}

}  // namespace rankzip::coders
