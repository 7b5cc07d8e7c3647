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

#include <algorithm>
#include <numeric>
#include <random>

#include "rankzip/error.hpp"
#include "rankzip/predictor.hpp"
#include "test_util.hpp"

using namespace rankzip;

namespace {

using Score = unsigned __int128;

// Scores straight from the definition: for every order j whose context is
// complete, count how often each token followed the last j tokens.
std::vector<Score> oracle_scores(const std::vector<TokenId>& prefix, std::size_t vocab, unsigned order) {
  std::vector<Score> score(vocab, 0);
  const std::size_t n = prefix.size();
  for (unsigned j = 0; j <= order; ++j) {
    if (n < j) continue;
    Score weight = 1;
    for (unsigned w = 0; w < j; ++w) weight *= 256;
    for (std::size_t i = j; i < n; ++i) {
      bool match = true;
      for (unsigned d = 1; d <= j && match; ++d) match = prefix[i - d] == prefix[n - d];
      if (match) score[prefix[i]] += weight;
    }
  }
  return score;
}

std::vector<TokenId> oracle_order(const std::vector<Score>& score) {
  std::vector<TokenId> ids(score.size());
  std::iota(ids.begin(), ids.end(), 0);
  std::stable_sort(ids.begin(), ids.end(), [&](TokenId a, TokenId b) { return score[a] > score[b]; });
  return ids;
}

std::vector<TokenId> bytes_to_tokens(BytesView s) {
  std::vector<TokenId> out;
  for (char c : s) out.push_back(static_cast<std::uint8_t>(c));
  return out;
}

}  // namespace

TEST_CASE("empty context gives the identity ranking") {
  BuiltinModel m(256, 3);
  const auto order = m.rank_next().ordered_tokens();
  for (TokenId t = 0; t < 256; ++t) CHECK(order[t] == t);
  CHECK(m.rank_next() == Ranking::identity(256));
}

TEST_CASE("order-1 model after ababa predicts b") {
  BuiltinModel m(256, 1);
  for (char c : std::string("ababa")) m.advance(static_cast<std::uint8_t>(c));
  CHECK(m.rank_next().ordered_tokens()[0] == 'b');
  CHECK(m.rank_of('b') == 0);
  CHECK(m.token_at(0) == 'b');
}

TEST_CASE("rankings match the brute-force sort oracle") {
  std::mt19937_64 rng(21);
  for (int round = 0; round < 60; ++round) {
    const std::size_t vocab = 2 + rng() % 40;
    const unsigned order = static_cast<unsigned>(rng() % 4);
    BuiltinModel m(vocab, static_cast<std::uint8_t>(order), 8);
    std::vector<TokenId> prefix;
    const std::size_t len = rng() % 120;
    for (std::size_t s = 0; s <= len; ++s) {
      const auto want_scores = oracle_scores(prefix, vocab, order);
      CHECK(m.scores() == want_scores);
      const auto want = oracle_order(want_scores);
      const Ranking got = m.rank_next();
      REQUIRE(got.ordered_tokens() == want);
      for (std::uint32_t r = 0; r < vocab; ++r) {
        CHECK(m.token_at(r) == want[r]);
        CHECK(m.rank_of(want[r]) == r);
      }
      if (s == len) break;
      // Skewed alphabet.
      const TokenId t = static_cast<TokenId>(std::min<std::uint64_t>(rng() % vocab, rng() % vocab));
      m.advance(t);
      prefix.push_back(t);
    }
  }
}

TEST_CASE("advance matches replay from scratch") {
  const auto tokens = bytes_to_tokens(testing::corpus("alice29.txt").substr(0, 3000));
  BuiltinModel live(256, 3);
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i % 500 == 0) {
      BuiltinModel fresh(256, 3);
      for (std::size_t j = 0; j < i; ++j) fresh.advance(tokens[j]);
      CHECK(fresh.state() == live.state());
      CHECK(fresh.rank_next() == live.rank_next());
    }
    live.advance(tokens[i]);
  }
  CHECK(live.step() == tokens.size());
  live.reset();
  CHECK(live.step() == 0);
  CHECK(live.rank_next() == Ranking::identity(256));
}

TEST_CASE("rank_next leaves state untouched") {
  BuiltinModel m(256, 3);
  for (char c : std::string("the cat sat on the mat")) m.advance(static_cast<std::uint8_t>(c));
  const PredictorState before = m.state();
  (void)m.rank_next();
  (void)m.rank_of('t');
  (void)m.token_at(5);
  CHECK(m.state() == before);
}

TEST_CASE("context window keeps the last W tokens") {
  ContextWindow w(3);
  for (TokenId t = 1; t <= 5; ++t) w.push(t);
  CHECK(w.to_vector() == std::vector<TokenId>{3, 4, 5});
  CHECK(w.size() == 3);
  BuiltinModel m(256, 2, 3);
  for (TokenId t = 1; t <= 5; ++t) m.advance(t);
  CHECK(m.state().context.to_vector() == std::vector<TokenId>{3, 4, 5});
  CHECK(m.state().context.size() <= 3);
}

TEST_CASE("batch mode freezes the snapshot") {
  const auto tokens = bytes_to_tokens(testing::corpus("asyoulik.txt").substr(0, 1500));
  for (std::uint32_t width : {1u, 2u, 4u, 7u}) {
    BatchPredictor batch(std::make_unique<BuiltinModel>(256, 3), width);
    CHECK(batch.descriptor().mode == InferenceMode::batch);
    CHECK(batch.descriptor().batch_width == width);
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      const std::size_t frozen = i / width * width;
      if (i % 97 == 0 || i < 12) {
        std::vector<TokenId> prefix(tokens.begin(), tokens.begin() + static_cast<std::ptrdiff_t>(frozen));
        CHECK(batch.rank_next().ordered_tokens() == oracle_order(oracle_scores(prefix, 256, 3)));
      }
      CHECK(batch.step() == i);
      batch.advance(tokens[i]);
    }
  }
  // Tokens 1..3 of a width-4 batch see the same ranking as token 0.
  BatchPredictor b4(std::make_unique<BuiltinModel>(256, 3), 4);
  b4.advance('x');
  b4.advance('y');
  b4.advance('z');
  b4.advance('x');
  const Ranking at4 = b4.rank_next();
  b4.advance('y');
  CHECK(b4.rank_next() == at4);
  b4.advance('z');
  CHECK(b4.rank_next() == at4);
  b4.advance('x');
  CHECK(b4.rank_next() == at4);
  b4.advance('y');
  CHECK_FALSE(b4.rank_next() == at4);
}

TEST_CASE("token_rank and token_at_rank") {
  const Ranking r({5, 2, 9}, 10);
  CHECK(token_rank(r, 5) == 0);
  CHECK(token_rank(r, 2) == 1);
  CHECK(token_rank(r, 9) == 2);
  CHECK(token_rank(r, 0) == 3);
  CHECK(token_rank(r, 1) == 4);
  CHECK(token_rank(r, 3) == 5);
  CHECK(r.ordered_tokens() == std::vector<TokenId>{5, 2, 9, 0, 1, 3, 4, 6, 7, 8});
  CHECK(token_at_rank(Ranking::identity(7), 0) == 0);
  CHECK_THROWS_AS(token_at_rank(r, 10), CorruptionError);
  CHECK_THROWS(Ranking({1, 1}, 4));
  CHECK_THROWS(Ranking({4}, 4));
}

TEST_CASE("inverse law on random rankings") {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 10000; ++i) {
    const std::size_t vocab = 1 + rng() % 300;
    std::vector<TokenId> perm(vocab);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    perm.resize(rng() % (vocab + 1));
    const Ranking r(perm, vocab);
    const TokenId t = static_cast<TokenId>(rng() % vocab);
    const auto rank = token_rank(r, t);
    REQUIRE(rank < vocab);
    CHECK(token_at_rank(r, rank) == t);
    CHECK(r.ordered_tokens()[rank] == t);
  }
}

TEST_CASE("out-of-range tokens and bad parameters") {
  BuiltinModel m(300, 3);
  CHECK_THROWS_AS(m.advance(300), CorruptionError);
  CHECK_THROWS_AS(m.token_at(300), CorruptionError);
  CHECK_THROWS_AS(BuiltinModel(256, 9), RangeError);
  CHECK_THROWS_AS(BuiltinModel(256, 4, 3), RangeError);
  CHECK_THROWS_AS(BuiltinModel(1u << 20, 4), RangeError);
  CHECK_NOTHROW(BuiltinModel(256, 8, 100));
}

TEST_CASE("descriptor fingerprints") {
  const auto a = PredictorDescriptor::builtin(3, 100);
  CHECK(a.fingerprint() == PredictorDescriptor::builtin(3, 100).fingerprint());
  CHECK(a.fingerprint() != PredictorDescriptor::builtin(2, 100).fingerprint());
  CHECK(a.fingerprint() != PredictorDescriptor::builtin(3, 50).fingerprint());
  CHECK(a.fingerprint() != PredictorDescriptor::builtin(3, 100, InferenceMode::batch, 4).fingerprint());
  CHECK(PredictorDescriptor::builtin(3, 100, InferenceMode::batch, 4).fingerprint() !=
        PredictorDescriptor::builtin(3, 100, InferenceMode::batch, 8).fingerprint());
  auto ext = a;
  ext.kind = PredictorKind::external;
  ext.upstream[0] = 1;
  CHECK(ext.fingerprint() != a.fingerprint());
  CHECK(BuiltinModel(256, 3).descriptor() == a);
}

TEST_CASE("predictor option parsing") {
  CHECK(PredictorOptions::parse("none").kind == PredictorKind::none);
  CHECK(PredictorOptions::parse("builtin").order == 3);
  CHECK(PredictorOptions::parse("builtin-k5").order == 5);
  CHECK(PredictorOptions::parse("builtin-k0").order == 0);
  CHECK(PredictorOptions::parse("external:127.0.0.1:9").address == "127.0.0.1:9");
  CHECK(PredictorOptions::parse("builtin-k5").name() == "builtin-k5");
  for (const char* bad : {"", "builtin-k", "builtin-k9", "builtin-kx", "external:", "toy-lm"})
    CHECK_THROWS_AS(PredictorOptions::parse(bad), UsageError);
}

TEST_CASE("order-3 puts more mass on rank 0 than order-0") {
  const auto tokens = bytes_to_tokens(testing::corpus("alice29.txt").substr(0, 60000));
  auto zero_fraction = [&](std::uint8_t order) {
    BuiltinModel m(256, order);
    std::size_t zeros = 0;
    for (TokenId t : tokens) {
      zeros += m.rank_of(t) == 0;
      m.advance(t);
    }
    return static_cast<double>(zeros) / static_cast<double>(tokens.size());
  };
  const double z0 = zero_fraction(0);
  const double z3 = zero_fraction(3);
  MESSAGE("rank-0 fraction: order 0 " << z0 << ", order 3 " << z3);
  CHECK(z3 > z0);
}
