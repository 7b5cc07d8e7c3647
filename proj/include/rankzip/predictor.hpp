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
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rankzip/bytes.hpp"
#include "rankzip/tokenizer.hpp"

namespace rankzip {

// Ordered candidate list for the next token. The explicit head lists the
// most probable tokens first; every token not in the head follows in
// ascending TokenId order. A head covering the whole vocabulary is a full
// permutation, an empty head is the identity permutation.
class Ranking {
 public:
  Ranking(std::vector<TokenId> head, std::size_t vocab_size);

  static Ranking identity(std::size_t vocab_size) { return Ranking({}, vocab_size); }

  std::size_t vocab_size() const noexcept { return vocab_size_; }
  const std::vector<TokenId>& head() const noexcept { return head_; }

  // Materializes the full permutation, most probable first.
  std::vector<TokenId> ordered_tokens() const;

  std::uint32_t rank_of(TokenId token) const;
  TokenId token_at(std::uint32_t rank) const;

  friend bool operator==(const Ranking& a, const Ranking& b) {
    return a.vocab_size_ == b.vocab_size_ && a.ordered_tokens() == b.ordered_tokens();
  }

 private:
  std::vector<TokenId> head_;
  std::vector<TokenId> sorted_head_;
  std::size_t vocab_size_;
};

// Position of `actual` in the ranking; 0 means the top candidate was right.
inline std::uint32_t token_rank(const Ranking& ranking, TokenId actual) { return ranking.rank_of(actual); }

// Decoder-side inverse of token_rank. Throws CorruptionError for ranks
// outside the vocabulary.
inline TokenId token_at_rank(const Ranking& ranking, std::uint32_t rank) { return ranking.token_at(rank); }

enum class PredictorKind : std::uint8_t { none = 0, builtin = 1, external = 2 };
enum class InferenceMode : std::uint8_t { individual = 0, batch = 1 };

std::string_view to_string(InferenceMode mode);

inline constexpr std::uint8_t kDefaultOrder = 3;
inline constexpr std::uint32_t kDefaultWindow = 100;
inline constexpr std::uint8_t kMaxOrder = 8;

struct PredictorDescriptor {
  PredictorKind kind = PredictorKind::builtin;
  std::string id;
  std::uint8_t order = kDefaultOrder;
  std::uint32_t window = kDefaultWindow;
  InferenceMode mode = InferenceMode::individual;
  std::uint32_t batch_width = 1;
  // Fingerprint reported by an external server; zero for the built-in model.
  Digest upstream{};

  static PredictorDescriptor builtin(std::uint8_t order = kDefaultOrder, std::uint32_t window = kDefaultWindow,
                                     InferenceMode mode = InferenceMode::individual, std::uint32_t batch_width = 1);

  // SHA-256 over a canonical rendering of every field that affects ranking.
  Digest fingerprint() const;

  friend bool operator==(const PredictorDescriptor&, const PredictorDescriptor&) = default;
};

class Predictor {
 public:
  virtual ~Predictor() = default;

  virtual const PredictorDescriptor& descriptor() const = 0;
  virtual std::size_t vocab_size() const = 0;

  // Ranking for the next token given everything fed so far. Never alters
  // the predictor's state.
  virtual Ranking rank_next() const = 0;

  // Fast paths used by the codec; equal to rank_next().rank_of(...) and
  // rank_next().token_at(...).
  virtual std::uint32_t rank_of(TokenId actual) const { return rank_next().rank_of(actual); }
  virtual TokenId token_at(std::uint32_t rank) const { return rank_next().token_at(rank); }

  // Feeds the true token. Throws CorruptionError for ids outside the vocabulary.
  virtual void advance(TokenId observed) = 0;

  // Tokens consumed so far.
  virtual std::uint64_t step() const = 0;

  // Returns to the start-of-stream state.
  virtual void reset() = 0;
};

// Fixed-capacity ring of the most recent tokens; index 0 is the oldest.
class ContextWindow {
 public:
  explicit ContextWindow(std::size_t capacity) : buf_(capacity == 0 ? 1 : capacity), capacity_(capacity) {}

  void push(TokenId t);
  void clear() noexcept { size_ = 0, start_ = 0; }

  std::size_t size() const noexcept { return size_; }
  std::size_t capacity() const noexcept { return capacity_; }
  TokenId operator[](std::size_t i) const { return buf_[(start_ + i) % buf_.size()]; }
  std::vector<TokenId> to_vector() const;

  friend bool operator==(const ContextWindow& a, const ContextWindow& b) {
    return a.capacity_ == b.capacity_ && a.to_vector() == b.to_vector();
  }

 private:
  std::vector<TokenId> buf_;
  std::size_t capacity_;
  std::size_t start_ = 0;
  std::size_t size_ = 0;
};

// Replayable state of the built-in model.
struct PredictorState {
  using Successors = std::vector<std::pair<TokenId, std::uint32_t>>;

  ContextWindow context;
  std::vector<std::uint32_t> order0;
  // tables[j - 1] maps the packed last j tokens to successor counts.
  std::vector<std::unordered_map<std::uint64_t, Successors>> tables;
  std::uint64_t step = 0;

  friend bool operator==(const PredictorState&, const PredictorState&) = default;
};

// Order-k context-counting model. A candidate's score is
//   sum over j = 0..k of count_j(candidate | last j tokens) * 256^j,
// computed in exact integer arithmetic; ties go to the smaller TokenId.
// Orders whose context is not yet available contribute nothing.
class BuiltinModel final : public Predictor {
 public:
  using Score = unsigned __int128;
  static constexpr std::uint32_t kWeightBase = 256;

  BuiltinModel(std::size_t vocab_size, std::uint8_t order = kDefaultOrder, std::uint32_t window = kDefaultWindow);

  const PredictorDescriptor& descriptor() const override { return descriptor_; }
  std::size_t vocab_size() const override { return vocab_size_; }
  Ranking rank_next() const override;
  std::uint32_t rank_of(TokenId actual) const override;
  TokenId token_at(std::uint32_t rank) const override;
  void advance(TokenId observed) override;
  std::uint64_t step() const override { return state_.step; }
  void reset() override;

  const PredictorState& state() const noexcept { return state_; }

  // Score of every token for the current state. Exposed for oracle tests.
  std::vector<Score> scores() const;

 private:
  std::uint64_t context_key(std::size_t order) const;
  void gather_higher_orders() const;
  void release_scratch() const;
  Score score_of(TokenId t) const { return state_.order0[t] + extra_[t]; }

  std::size_t vocab_size_;
  std::uint8_t order_;
  unsigned key_bits_;
  PredictorDescriptor descriptor_;
  PredictorState state_;

  mutable std::vector<Score> extra_;
  mutable std::vector<TokenId> touched_;
  mutable std::vector<std::pair<Score, TokenId>> candidates_;
  // Every token ordered by (order-0 count desc, id asc), kept sorted as
  // counts grow; slot_ is the inverse. Tokens without higher-order evidence
  // rank in exactly this order.
  std::vector<TokenId> by_count_;
  std::vector<std::uint32_t> slot_;
};

// Batch inference: the wrapped predictor is frozen for `width` tokens at a
// time, so every token of a batch is ranked against the same snapshot. The
// pending tokens are applied together once the batch fills.
class BatchPredictor final : public Predictor {
 public:
  BatchPredictor(std::unique_ptr<Predictor> inner, std::uint32_t width);

  const PredictorDescriptor& descriptor() const override { return descriptor_; }
  std::size_t vocab_size() const override { return inner_->vocab_size(); }
  Ranking rank_next() const override;
  std::uint32_t rank_of(TokenId actual) const override;
  TokenId token_at(std::uint32_t rank) const override;
  void advance(TokenId observed) override;
  std::uint64_t step() const override { return inner_->step() + pending_.size(); }
  void reset() override;

  const Predictor& inner() const noexcept { return *inner_; }
  std::size_t pending() const noexcept { return pending_.size(); }

 private:
  const Ranking& snapshot() const;

  std::unique_ptr<Predictor> inner_;
  std::uint32_t width_;
  PredictorDescriptor descriptor_;
  std::vector<TokenId> pending_;
  mutable std::unique_ptr<Ranking> cached_;
};

// Predictor selection as written on the command line:
//   none | builtin-k<order> | external:<address>
struct PredictorOptions {
  PredictorKind kind = PredictorKind::builtin;
  std::uint8_t order = kDefaultOrder;
  std::string address;
  std::uint32_t window = kDefaultWindow;
  InferenceMode mode = InferenceMode::individual;
  std::uint32_t batch_width = 1;

  static PredictorOptions parse(std::string_view text);
  std::string name() const;
};

// Builds the predictor; batch mode wraps it in BatchPredictor. External
// predictors connect and complete the handshake here.
std::unique_ptr<Predictor> make_predictor(const PredictorOptions& options, const Vocabulary& vocab);

// Rebuilds a built-in predictor from a recorded descriptor.
std::unique_ptr<Predictor> make_builtin(const PredictorDescriptor& descriptor, std::size_t vocab_size);

}  // namespace rankzip
