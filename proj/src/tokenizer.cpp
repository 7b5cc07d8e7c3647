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

#include "rankzip/tokenizer.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <iterator>
#include <queue>
#include <unordered_map>

#include "rankzip/error.hpp"
#include "rankzip/hashing.hpp"

namespace rankzip {
namespace {

constexpr std::string_view kVocabMagic = "AZVB";
constexpr std::uint8_t kVocabVersion = 1;
constexpr TokenId kNone = static_cast<TokenId>(-1);

std::uint64_t pair_key(TokenId left, TokenId right) {
  return static_cast<std::uint64_t>(left) << 32 | right;
}

// Doubly linked list over symbol slots; merging kills the right slot.
struct SymbolChain {
  std::vector<TokenId> sym;
  std::vector<std::uint32_t> prev, next;
  std::vector<bool> alive;

  explicit SymbolChain(BytesView text) : sym(text.size()), prev(text.size()), next(text.size()), alive(text.size(), true) {
    for (std::size_t i = 0; i < text.size(); ++i) {
      sym[i] = static_cast<std::uint8_t>(text[i]);
      prev[i] = i == 0 ? kNone : static_cast<std::uint32_t>(i - 1);
      next[i] = i + 1 == text.size() ? kNone : static_cast<std::uint32_t>(i + 1);
    }
  }

  // Joins slot p with its successor under symbol `merged`.
  void join(std::uint32_t p, TokenId merged) {
    std::uint32_t q = next[p];
    sym[p] = merged;
    alive[q] = false;
    next[p] = next[q];
    if (next[q] != kNone) prev[next[q]] = p;
  }
};

}  // namespace

Vocabulary Vocabulary::byte_level() { return from_merges({}); }

Vocabulary Vocabulary::from_merges(std::vector<Merge> merges) {
  Vocabulary v;
  v.entries_.reserve(256 + merges.size());
  for (int b = 0; b < 256; ++b) v.entries_.emplace_back(1, static_cast<char>(b));
  for (const Merge& m : merges) {
    if (m.left >= v.entries_.size() || m.right >= v.entries_.size())
      throw CorruptionError("merge references an entry that does not exist yet");
    v.entries_.push_back(v.entries_[m.left] + v.entries_[m.right]);
  }
  v.merges_ = std::move(merges);
  v.fingerprint_ = sha256(v.body());
  return v;
}

Bytes Vocabulary::body() const {
  Bytes out;
  ByteWriter w(out);
  w.u32(static_cast<std::uint32_t>(entries_.size()));
  for (const Bytes& e : entries_) {
    w.u32(static_cast<std::uint32_t>(e.size()));
    w.raw(e);
  }
  w.u32(static_cast<std::uint32_t>(merges_.size()));
  for (const Merge& m : merges_) {
    w.u32(m.left);
    w.u32(m.right);
  }
  return out;
}

Bytes Vocabulary::serialize() const {
  Bytes out(kVocabMagic);
  out.push_back(static_cast<char>(kVocabVersion));
  out += body();
  return out;
}

Vocabulary Vocabulary::deserialize(BytesView data) {
  ByteReader in(data);
  expect_magic(in, kVocabMagic, kVocabVersion, "vocabulary");
  const std::uint32_t entry_count = in.u32();
  if (entry_count < 256) throw CorruptionError("vocabulary: fewer than 256 entries");
  if (entry_count > in.remaining() / 4) throw CorruptionError("vocabulary: entry count exceeds file size");
  std::vector<Bytes> entries;
  entries.reserve(entry_count);
  for (std::uint32_t i = 0; i < entry_count; ++i) {
    std::uint32_t len = in.u32();
    entries.emplace_back(in.raw(len));
  }
  const std::uint32_t merge_count = in.u32();
  if (merge_count != entry_count - 256) throw CorruptionError("vocabulary: merge count does not match entries");
  std::vector<Merge> merges;
  merges.reserve(merge_count);
  for (std::uint32_t i = 0; i < merge_count; ++i) {
    TokenId l = in.u32();
    TokenId r = in.u32();
    merges.push_back({l, r});
  }
  if (!in.at_end()) throw CorruptionError("vocabulary: trailing bytes");
  Vocabulary v = from_merges(std::move(merges));
  if (v.entries_ != entries) throw CorruptionError("vocabulary: entries disagree with merges");
  return v;
}

void Vocabulary::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  Bytes data = serialize();
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw Error("short write to " + path.string());
}

Vocabulary Vocabulary::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open vocabulary " + path.string());
  Bytes data{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return deserialize(data);
}

Vocabulary train_bpe(BytesView corpus, std::size_t target_vocab_size) {
  if (corpus.empty()) throw UsageError("empty training corpus");
  if (target_vocab_size < kMinVocabTarget)
    throw RangeError("target vocabulary size must be at least " + std::to_string(kMinVocabTarget));

  SymbolChain chain(corpus);
  std::unordered_map<std::uint64_t, std::int64_t> counts;
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> where;
  auto bump = [&](std::uint32_t p, std::int64_t delta) {
    std::uint32_t q = chain.next[p];
    std::uint64_t key = pair_key(chain.sym[p], chain.sym[q]);
    auto it = counts.try_emplace(key, 0).first;
    it->second += delta;
    if (delta > 0) where[key].push_back(p);
    if (it->second <= 0) counts.erase(it);
  };
  for (std::uint32_t p = 0; p + 1 < corpus.size(); ++p) bump(p, 1);

  std::vector<Bytes> entries;
  for (int b = 0; b < 256; ++b) entries.emplace_back(1, static_cast<char>(b));
  std::vector<Merge> merges;

  auto better = [&](std::uint64_t a, std::int64_t ca, std::uint64_t b, std::int64_t cb) {
    if (ca != cb) return ca > cb;
    const Bytes& al = entries[a >> 32];
    const Bytes& bl = entries[b >> 32];
    if (al != bl) return al < bl;
    const Bytes& ar = entries[a & 0xFFFFFFFF];
    const Bytes& br = entries[b & 0xFFFFFFFF];
    if (ar != br) return ar < br;
    return a < b;  // equal byte content, distinct ids
  };

  while (entries.size() < target_vocab_size) {
    std::uint64_t best = 0;
    std::int64_t best_count = 0;
    for (const auto& [key, count] : counts) {
      if (best_count == 0 || better(key, count, best, best_count)) {
        best = key;
        best_count = count;
      }
    }
    if (best_count < 2) break;

    const auto left = static_cast<TokenId>(best >> 32);
    const auto right = static_cast<TokenId>(best & 0xFFFFFFFF);
    const auto merged = static_cast<TokenId>(entries.size());
    merges.push_back({left, right});
    entries.push_back(entries[left] + entries[right]);

    std::vector<std::uint32_t> spots = std::move(where[best]);
    where.erase(best);
    std::sort(spots.begin(), spots.end());
    for (std::uint32_t p : spots) {
      if (!chain.alive[p]) continue;
      std::uint32_t q = chain.next[p];
      if (q == kNone || chain.sym[p] != left || chain.sym[q] != right) continue;
      std::uint32_t before = chain.prev[p];
      if (before != kNone) bump(before, -1);
      if (chain.next[q] != kNone) bump(q, -1);
      bump(p, -1);
      chain.join(p, merged);
      if (before != kNone) bump(before, 1);
      if (chain.next[p] != kNone) bump(p, 1);
    }
    counts.erase(best);
  }
  return Vocabulary::from_merges(std::move(merges));
}

TokenSequence tokenize(BytesView text, const Vocabulary& vocab) {
  TokenSequence out;
  out.source_length = text.size();
  if (text.empty()) return out;

  const auto& merges = vocab.merges();
  std::unordered_map<std::uint64_t, std::uint32_t> rank_of;
  rank_of.reserve(merges.size());
  for (std::uint32_t i = 0; i < merges.size(); ++i) rank_of.emplace(pair_key(merges[i].left, merges[i].right), i);

  SymbolChain chain(text);
  using Item = std::pair<std::uint32_t, std::uint32_t>;  // (merge rank, slot)
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  auto offer = [&](std::uint32_t p) {
    std::uint32_t q = chain.next[p];
    if (q == kNone) return;
    if (auto it = rank_of.find(pair_key(chain.sym[p], chain.sym[q])); it != rank_of.end()) heap.emplace(it->second, p);
  };
  if (!merges.empty())
    for (std::uint32_t p = 0; p + 1 < text.size(); ++p) offer(p);

  while (!heap.empty()) {
    auto [rank, p] = heap.top();
    heap.pop();
    if (!chain.alive[p] || chain.next[p] == kNone) continue;
    const Merge& m = merges[rank];
    if (chain.sym[p] != m.left || chain.sym[chain.next[p]] != m.right) continue;
    chain.join(p, static_cast<TokenId>(256 + rank));
    if (chain.prev[p] != kNone) offer(chain.prev[p]);
    offer(p);
  }

  for (std::uint32_t p = 0; p != kNone; p = chain.next[p]) out.tokens.push_back(chain.sym[p]);
  return out;
}

Bytes detokenize(const std::vector<TokenId>& tokens, const Vocabulary& vocab) {
  Bytes out;
  for (TokenId t : tokens) {
    if (t >= vocab.size()) throw CorruptionError("token id " + std::to_string(t) + " outside vocabulary");
    out += vocab.entries()[t];
  }
  return out;
}

Bytes detokenize(const TokenSequence& tokens, const Vocabulary& vocab) { return detokenize(tokens.tokens, vocab); }

}  // namespace rankzip
