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

#include <map>
#include <random>

#include "rankzip/error.hpp"
#include "rankzip/tokenizer.hpp"
#include "test_util.hpp"

using namespace rankzip;

namespace {

// Straightforward trainer: recount every adjacent pair after each merge and
// rewrite the sequence left to right.
std::vector<Merge> naive_train(BytesView corpus, std::size_t target) {
  std::vector<TokenId> seq(corpus.begin(), corpus.end());
  for (auto& t : seq) t &= 0xFF;
  std::vector<Bytes> entries;
  for (int b = 0; b < 256; ++b) entries.emplace_back(1, static_cast<char>(b));
  std::vector<Merge> merges;
  while (entries.size() < target) {
    std::map<std::pair<TokenId, TokenId>, int> counts;
    for (std::size_t i = 0; i + 1 < seq.size(); ++i) ++counts[{seq[i], seq[i + 1]}];
    std::pair<TokenId, TokenId> best{};
    int best_count = 0;
    for (const auto& [pair, c] : counts) {
      auto key = [&](std::pair<TokenId, TokenId> p) { return std::tie(entries[p.first], entries[p.second]); };
      if (c > best_count || (c == best_count && key(pair) < key(best))) {
        best = pair;
        best_count = c;
      }
    }
    if (best_count < 2) break;
    const auto id = static_cast<TokenId>(entries.size());
    entries.push_back(entries[best.first] + entries[best.second]);
    merges.push_back({best.first, best.second});
    std::vector<TokenId> next;
    for (std::size_t i = 0; i < seq.size(); ++i) {
      if (i + 1 < seq.size() && seq[i] == best.first && seq[i + 1] == best.second) {
        next.push_back(id);
        ++i;
      } else {
        next.push_back(seq[i]);
      }
    }
    seq = std::move(next);
  }
  return merges;
}

// Applies each merge in creation order across the whole sequence.
std::vector<TokenId> naive_tokenize(BytesView text, const Vocabulary& v) {
  std::vector<TokenId> seq;
  for (char c : text) seq.push_back(static_cast<std::uint8_t>(c));
  for (std::size_t r = 0; r < v.merges().size(); ++r) {
    const Merge m = v.merges()[r];
    std::vector<TokenId> next;
    for (std::size_t i = 0; i < seq.size(); ++i) {
      if (i + 1 < seq.size() && seq[i] == m.left && seq[i + 1] == m.right) {
        next.push_back(static_cast<TokenId>(256 + r));
        ++i;
      } else {
        next.push_back(seq[i]);
      }
    }
    seq = std::move(next);
  }
  return seq;
}

TokenId id_of(const Vocabulary& v, BytesView s) {
  for (TokenId i = 0; i < v.size(); ++i)
    if (v.entry(i) == s) return i;
  FAIL("no entry " << std::string(s));
  return 0;
}

}  // namespace

TEST_CASE("first merge on aaab is (a, a)") {
  const auto v = train_bpe("aaab", 258);
  REQUIRE(v.merges().size() == 1);
  CHECK(v.merges()[0] == Merge{'a', 'a'});
  CHECK(v.merges() == naive_train("aaab", 258));
  CHECK(v.entry(256) == "aa");
}

TEST_CASE("no merge when every pair occurs once") {
  Bytes all;
  for (int b = 0; b < 256; ++b) all.push_back(static_cast<char>(b));
  const auto v = train_bpe(all, 257);
  CHECK(v.merges().empty());
  CHECK(v.size() == 256);
}

TEST_CASE("abababab trains ab then abab") {
  const auto v = train_bpe("abababab", 259);
  REQUIRE(v.merges().size() == 2);
  CHECK(v.entry(v.merges()[0].left) == "a");
  CHECK(v.entry(v.merges()[0].right) == "b");
  CHECK(v.entry(v.merges()[1].left) == "ab");
  CHECK(v.entry(v.merges()[1].right) == "ab");
  CHECK(v.merges() == naive_train("abababab", 259));
}

TEST_CASE("trainer matches the recounting oracle") {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 300; ++round) {
    const auto n = 2 + rng() % 200;
    const unsigned alphabet = 2 + rng() % 5;
    Bytes corpus = testing::random_bytes(rng, n, alphabet);
    for (auto& c : corpus) c = static_cast<char>('a' + c);
    const std::size_t target = 257 + rng() % 30;
    INFO("corpus=" << corpus << " target=" << target);
    CHECK(train_bpe(corpus, target).merges() == naive_train(corpus, target));
  }
  const Bytes text = testing::corpus("alice29.txt").substr(0, 4000);
  CHECK(train_bpe(text, 300).merges() == naive_train(text, 300));
}

TEST_CASE("tokenize applies merges in creation order") {
  const auto v = Vocabulary::from_merges({{'a', 'b'}, {256, 256}});
  CHECK(tokenize("abab", v).tokens == std::vector<TokenId>{id_of(v, "abab")});
  CHECK(tokenize("", v).tokens.empty());
  CHECK(tokenize("ababa", v).tokens == std::vector<TokenId>{257, 'a'});

  const auto trained = train_bpe(testing::corpus("lcet10.txt").substr(0, 20000), 400);
  std::mt19937_64 rng(5);
  const Bytes english = testing::corpus("alice29.txt");
  for (int i = 0; i < 50; ++i) {
    const auto at = rng() % (english.size() - 600);
    const Bytes piece = english.substr(at, rng() % 600);
    CHECK(tokenize(piece, trained).tokens == naive_tokenize(piece, trained));
  }
}

TEST_CASE("byte-level vocabulary is the identity") {
  const auto v = Vocabulary::byte_level();
  std::mt19937_64 rng(3);
  const Bytes x = testing::random_bytes(rng, 500);
  const auto seq = tokenize(x, v);
  REQUIRE(seq.tokens.size() == x.size());
  for (std::size_t i = 0; i < x.size(); ++i) CHECK(seq.tokens[i] == static_cast<std::uint8_t>(x[i]));
}

TEST_CASE("round trip, length bound and determinism") {
  const Bytes training = testing::corpus("lcet10.txt").substr(0, 50000);
  const auto v = train_bpe(training, 512);
  CHECK(v.size() <= 512);
  CHECK(train_bpe(training, 512).fingerprint() == v.fingerprint());
  CHECK(train_bpe(training, 512) == v);

  std::mt19937_64 rng(17);
  for (int i = 0; i < 1000; ++i) {
    const Bytes x = i % 2 ? testing::random_bytes(rng, rng() % 300) : testing::random_utf8(rng, rng() % 300);
    const auto seq = tokenize(x, v);
    REQUIRE(detokenize(seq, v) == x);
    CHECK(seq.tokens.size() <= x.size());
    CHECK(seq.source_length == x.size());
  }
}

TEST_CASE("vocabulary invariants") {
  const auto v = train_bpe(testing::corpus("asyoulik.txt").substr(0, 30000), 600);
  for (int b = 0; b < 256; ++b) CHECK(v.entry(static_cast<TokenId>(b)) == Bytes(1, static_cast<char>(b)));
  REQUIRE(v.size() == 256 + v.merges().size());
  for (std::size_t i = 0; i < v.merges().size(); ++i) {
    const Merge m = v.merges()[i];
    CHECK(m.left < 256 + i);
    CHECK(m.right < 256 + i);
    CHECK(v.entry(static_cast<TokenId>(256 + i)) == v.entry(m.left) + v.entry(m.right));
  }
}

TEST_CASE("fingerprint follows content") {
  const auto a = Vocabulary::from_merges({{'a', 'b'}});
  const auto b = Vocabulary::from_merges({{'a', 'c'}});
  const auto c = Vocabulary::from_merges({{'a', 'b'}, {256, 'c'}});
  CHECK(a.fingerprint() != b.fingerprint());
  CHECK(a.fingerprint() != c.fingerprint());
  CHECK(a.fingerprint() == Vocabulary::from_merges({{'a', 'b'}}).fingerprint());
  CHECK(a.fingerprint() != Vocabulary::byte_level().fingerprint());
}

TEST_CASE("vocabulary file round trip") {
  const auto v = train_bpe(testing::corpus("alice29.txt").substr(0, 20000), 320);
  const Bytes s = v.serialize();
  CHECK(s.substr(0, 4) == "AZVB");
  const auto back = Vocabulary::deserialize(s);
  CHECK(back == v);
  CHECK(back.fingerprint() == v.fingerprint());
  CHECK_THROWS_AS(Vocabulary::deserialize(s.substr(0, s.size() - 1)), CorruptionError);
  Bytes bad = s;
  bad[0] = 'X';
  CHECK_THROWS_AS(Vocabulary::deserialize(bad), CorruptionError);
}

TEST_CASE("shipped English vocabulary is reproducible from lcet10") {
  const auto shipped = Vocabulary::load(testing::english_vocab_path());
  CHECK(shipped == train_bpe(testing::corpus("lcet10.txt"), 512));
}

TEST_CASE("training and decoding errors") {
  CHECK_THROWS_WITH_AS(train_bpe("", 300), "empty training corpus", UsageError);
  CHECK_THROWS_AS(train_bpe("abc", 256), RangeError);
  CHECK_THROWS_AS(train_bpe("abc", 0), RangeError);
  const auto v = Vocabulary::byte_level();
  CHECK(detokenize(std::vector<TokenId>{}, v).empty());
  CHECK_THROWS_AS(detokenize(std::vector<TokenId>{'a', 256}, v), CorruptionError);
  const auto w = Vocabulary::from_merges({{'a', 'b'}});
  CHECK(detokenize(std::vector<TokenId>{256, 'c'}, w) == "abc");
  CHECK_THROWS(Vocabulary::from_merges({{'a', 300}}));
}
