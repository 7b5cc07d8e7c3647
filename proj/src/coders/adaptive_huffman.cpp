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

#include "rankzip/coders/adaptive_huffman.hpp"

#include <algorithm>
#include <utility>

#include "rankzip/error.hpp"

namespace rankzip::coders {
namespace {

constexpr std::string_view kMagic = "AZAH";
constexpr std::uint8_t kVersion = 1;

}  // namespace

FgkTree::FgkTree() : nodes_(kSlots) {
  nodes_[kRoot].symbol = kNyt;
  leaf_.fill(kNone);
}

void FgkTree::emit_path(int slot, BitWriter& out) const {
  // Paths are at most 256 edges deep; collect leaf-to-root, emit reversed.
  std::array<std::uint8_t, kSlots> bits{};
  std::size_t depth = 0;
  while (slot != kRoot) {
    int p = nodes_[slot].parent;
    bits[depth++] = nodes_[p].right == slot ? 1 : 0;
    slot = p;
  }
  while (depth > 0) out.put_bit(bits[--depth]);
}

void FgkTree::encode(std::uint8_t symbol, BitWriter& out) {
  if (leaf_[symbol] != kNone) {
    emit_path(leaf_[symbol], out);
  } else {
    emit_path(nyt_, out);
    out.put(symbol, 8);
  }
  update(symbol);
}

std::uint8_t FgkTree::decode(BitReader& in) {
  int slot = kRoot;
  while (nodes_[slot].symbol == kInternal) slot = in.get_bit() ? nodes_[slot].right : nodes_[slot].left;
  std::uint8_t symbol;
  if (nodes_[slot].symbol == kNyt) {
    symbol = static_cast<std::uint8_t>(in.get(8));
    if (leaf_[symbol] != kNone) throw CorruptionError("adaptive huffman: literal for a symbol already in the tree");
  } else {
    symbol = static_cast<std::uint8_t>(nodes_[slot].symbol);
  }
  update(symbol);
  return symbol;
}

void FgkTree::swap_slots(int a, int b) {
  Node& x = nodes_[a];
  Node& y = nodes_[b];
  std::swap(x.weight, y.weight);
  std::swap(x.left, y.left);
  std::swap(x.right, y.right);
  std::swap(x.symbol, y.symbol);
  for (int slot : {a, b}) {
    Node& n = nodes_[slot];
    if (n.symbol == kInternal) {
      nodes_[n.left].parent = slot;
      nodes_[n.right].parent = slot;
    } else if (n.symbol == kNyt) {
      nyt_ = slot;
    } else {
      leaf_[static_cast<std::size_t>(n.symbol)] = slot;
    }
  }
}

void FgkTree::update(std::uint8_t symbol) {
  int q = leaf_[symbol];
  if (q == kNone) {
    // Split NYT: the old slot becomes the parent, the new NYT and the new
    // leaf take the two highest free slots.
    const int parent = nyt_;
    const int leaf = next_free_;
    const int fresh_nyt = next_free_ - 1;
    next_free_ -= 2;
    nodes_[parent].symbol = kInternal;
    nodes_[parent].left = fresh_nyt;
    nodes_[parent].right = leaf;
    nodes_[leaf] = Node{0, parent, kNone, kNone, symbol};
    nodes_[fresh_nyt] = Node{0, parent, kNone, kNone, kNyt};
    leaf_[symbol] = leaf;
    nyt_ = fresh_nyt;
    q = leaf;
  }

  auto block_end = [&](int slot) {
    int top = slot;
    while (top < kRoot && nodes_[top + 1].weight == nodes_[slot].weight) ++top;
    return top;
  };

  // The NYT's sibling shares its weight with its parent, so it may only
  // trade places with a leaf.
  if (q != kRoot && nodes_[nodes_[q].parent].left == nyt_) {
    int leader = q;
    for (int s = block_end(q); s > q; --s) {
      if (nodes_[s].symbol != kInternal) {
        leader = s;
        break;
      }
    }
    if (leader != q) {
      swap_slots(q, leader);
      q = leader;
    }
    ++nodes_[q].weight;
    q = nodes_[q].parent;
  }

  while (q != kRoot) {
    int leader = block_end(q);
    if (leader == nodes_[q].parent) --leader;
    if (leader != q) {
      swap_slots(q, leader);
      q = leader;
    }
    ++nodes_[q].weight;
    q = nodes_[q].parent;
  }
  ++nodes_[kRoot].weight;
}

bool FgkTree::sibling_property_holds() const {
  const int low = next_free_ + 1;
  if (nodes_[nyt_].symbol != kNyt || nyt_ != low) return false;
  for (int s = low; s < kRoot; ++s)
    if (nodes_[s].weight > nodes_[s + 1].weight) return false;
  for (int s = low; s <= kRoot; ++s) {
    const Node& n = nodes_[s];
    if (s != kRoot) {
      const Node& p = nodes_[n.parent];
      if (p.symbol != kInternal || (p.left != s && p.right != s)) return false;
    }
    if (n.symbol == kInternal) {
      if (n.left != n.right - 1) return false;  // siblings adjacent, left first
      if (nodes_[n.left].parent != s || nodes_[n.right].parent != s) return false;
      if (n.weight != nodes_[n.left].weight + nodes_[n.right].weight) return false;
    } else if (n.symbol >= 0 && leaf_[static_cast<std::size_t>(n.symbol)] != s) {
      return false;
    }
  }
  return true;
}

Bytes adaptive_huffman_compress(BytesView data) {
  Bytes out(kMagic);
  out.push_back(static_cast<char>(kVersion));
  ByteWriter(out).varint(data.size());
  FgkTree tree;
  BitWriter bits(out);
  for (char c : data) tree.encode(static_cast<std::uint8_t>(c), bits);
  bits.flush();
  return out;
}

Bytes adaptive_huffman_decompress(BytesView data) {
  ByteReader in(data);
  expect_magic(in, kMagic, kVersion, "adaptive huffman");
  const std::uint64_t length = in.varint();
  BitReader bits(data.substr(in.offset()));
  if (length > (data.size() - in.offset()) * 8) throw CorruptionError("adaptive huffman: length exceeds bitstream");
  FgkTree tree;
  Bytes out;
  out.reserve(length);
  for (std::uint64_t i = 0; i < length; ++i) out.push_back(static_cast<char>(tree.decode(bits)));
  bits.expect_end();
  return out;
}

}  // namespace rankzip::coders
