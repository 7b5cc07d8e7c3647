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
#include <vector>

#include "rankzip/bytes.hpp"
#include "rankzip/coders/bit_io.hpp"

namespace rankzip::coders {

// One-pass adaptive Huffman tree (FGK).
//
// Nodes live in an array whose index is the node's implicit number: the
// root holds the highest slot and weights never decrease with the number
// (sibling property), with siblings in adjacent slots, left child first.
// The tree starts as a lone NYT ("not yet transmitted") leaf. A first
// occurrence is sent as the NYT code followed by the 8-bit literal; the
// NYT leaf then splits into a new NYT (left) and the symbol's leaf (right),
// taking the two highest free slots. After each symbol every node on the
// leaf-to-root path is swapped with the highest-numbered node of equal
// weight (never its own parent) and incremented.
class FgkTree {
 public:
  static constexpr int kSlots = 2 * 257 - 1;
  static constexpr int kRoot = kSlots - 1;
  static constexpr int kNone = -1;
  static constexpr int kNyt = -2;  // symbol tag of the NYT leaf
  static constexpr int kInternal = -3;

  struct Node {
    std::uint64_t weight = 0;
    int parent = kNone;
    int left = kNone;
    int right = kNone;
    int symbol = kInternal;

    friend bool operator==(const Node&, const Node&) = default;
  };

  FgkTree();

  void encode(std::uint8_t symbol, BitWriter& out);
  std::uint8_t decode(BitReader& in);

  // Checks weights are non-decreasing by slot, siblings are adjacent,
  // internal weights equal the sum of their children and links agree.
  bool sibling_property_holds() const;

  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  int lowest_used_slot() const noexcept { return next_free_ + 1; }

  friend bool operator==(const FgkTree& a, const FgkTree& b) {
    return a.nodes_ == b.nodes_ && a.leaf_ == b.leaf_ && a.nyt_ == b.nyt_ && a.next_free_ == b.next_free_;
  }

 private:
  void emit_path(int slot, BitWriter& out) const;
  void update(std::uint8_t symbol);
  void swap_slots(int a, int b);

  std::vector<Node> nodes_;
  std::array<int, 256> leaf_{};
  int nyt_ = kRoot;
  int next_free_ = kRoot - 1;
};

// Layout: "AZAH" 0x01, varint original length, FGK bitstream MSB-first,
// zero padded.
Bytes adaptive_huffman_compress(BytesView data);
Bytes adaptive_huffman_decompress(BytesView data);

}  // namespace rankzip::coders
