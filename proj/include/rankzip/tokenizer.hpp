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

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "rankzip/bytes.hpp"

namespace rankzip {

using TokenId = std::uint32_t;

struct TokenSequence {
  std::vector<TokenId> tokens;
  std::size_t source_length = 0;
};

struct Merge {
  TokenId left;
  TokenId right;

  friend bool operator==(const Merge&, const Merge&) = default;
};

// Byte-pair-encoding vocabulary. Entries 0..255 are the single bytes; entry
// 256 + i is the concatenation produced by merges()[i]. Immutable once built.
class Vocabulary {
 public:
  // Identity vocabulary: one token per byte value, no merges.
  static Vocabulary byte_level();

  // Validates that every merge references earlier entries.
  static Vocabulary from_merges(std::vector<Merge> merges);

  std::size_t size() const noexcept { return entries_.size(); }
  const std::vector<Bytes>& entries() const noexcept { return entries_; }
  const std::vector<Merge>& merges() const noexcept { return merges_; }
  const Bytes& entry(TokenId id) const { return entries_.at(id); }
  const Digest& fingerprint() const noexcept { return fingerprint_; }

  // Serialized body: entry count, length-prefixed entries, merge count,
  // merge index pairs. The fingerprint is SHA-256 over exactly these bytes.
  Bytes body() const;

  // "AZVB" + version byte + body.
  Bytes serialize() const;
  static Vocabulary deserialize(BytesView data);

  void save(const std::filesystem::path& path) const;
  static Vocabulary load(const std::filesystem::path& path);

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) {
    return a.entries_ == b.entries_ && a.merges_ == b.merges_;
  }

 private:
  Vocabulary() = default;

  std::vector<Bytes> entries_;
  std::vector<Merge> merges_;
  Digest fingerprint_{};
};

inline constexpr std::size_t kMinVocabTarget = 257;

// Trains by repeatedly merging the most frequent adjacent pair. Ties go to
// the lexicographically smallest (left bytes, right bytes); pairs seen fewer
// than twice are never merged.
Vocabulary train_bpe(BytesView corpus, std::size_t target_vocab_size);

TokenSequence tokenize(BytesView text, const Vocabulary& vocab);
Bytes detokenize(const TokenSequence& tokens, const Vocabulary& vocab);
Bytes detokenize(const std::vector<TokenId>& tokens, const Vocabulary& vocab);

}  // namespace rankzip
