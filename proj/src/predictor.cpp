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

#include "rankzip/predictor.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <limits>
#include <numeric>

#include "rankzip/error.hpp"
#include "rankzip/external_predictor.hpp"
#include "rankzip/hashing.hpp"

namespace rankzip {

// --- Ranking -------------------------------------------------------------

Ranking::Ranking(std::vector<TokenId> head, std::size_t vocab_size)
    : head_(std::move(head)), sorted_head_(head_), vocab_size_(vocab_size) {
  std::sort(sorted_head_.begin(), sorted_head_.end());
  if (!sorted_head_.empty() && sorted_head_.back() >= vocab_size_)
    throw CorruptionError("ranking lists a token outside the vocabulary");
  if (std::adjacent_find(sorted_head_.begin(), sorted_head_.end()) != sorted_head_.end())
    throw CorruptionError("ranking lists a token twice");
}

std::vector<TokenId> Ranking::ordered_tokens() const {
  std::vector<TokenId> out(head_);
  out.reserve(vocab_size_);
  auto listed = sorted_head_.begin();
  for (TokenId t = 0; t < vocab_size_; ++t) {
    if (listed != sorted_head_.end() && *listed == t) {
      ++listed;
      continue;
    }
    out.push_back(t);
  }
  return out;
}

std::uint32_t Ranking::rank_of(TokenId token) const {
  if (token >= vocab_size_) throw CorruptionError("token id " + std::to_string(token) + " outside vocabulary");
  auto below = std::lower_bound(sorted_head_.begin(), sorted_head_.end(), token);
  if (below != sorted_head_.end() && *below == token)
    return static_cast<std::uint32_t>(std::find(head_.begin(), head_.end(), token) - head_.begin());
  auto listed_below = static_cast<std::size_t>(below - sorted_head_.begin());
  return static_cast<std::uint32_t>(head_.size() + token - listed_below);
}

TokenId Ranking::token_at(std::uint32_t rank) const {
  if (rank >= vocab_size_) throw CorruptionError("rank " + std::to_string(rank) + " outside vocabulary");
  if (rank < head_.size()) return head_[rank];
  // The k-th unlisted id: step over listed ids at or below the candidate.
  TokenId candidate = static_cast<TokenId>(rank - head_.size());
  for (TokenId listed : sorted_head_) {
    if (listed > candidate) break;
    ++candidate;
  }
  return candidate;
}

// --- Descriptor ----------------------------------------------------------

std::string_view to_string(InferenceMode mode) { return mode == InferenceMode::batch ? "batch" : "individual"; }

PredictorDescriptor PredictorDescriptor::builtin(std::uint8_t order, std::uint32_t window, InferenceMode mode,
                                                 std::uint32_t batch_width) {
  PredictorDescriptor d;
  d.kind = PredictorKind::builtin;
  d.id = "builtin-k" + std::to_string(order);
  d.order = order;
  d.window = window;
  d.mode = mode;
  d.batch_width = mode == InferenceMode::batch ? batch_width : 1;
  return d;
}

Digest PredictorDescriptor::fingerprint() const {
  std::string canon = "rankzip-predictor/1";
  canon += ";kind=" + std::to_string(static_cast<int>(kind));
  canon += ";id=" + id;
  canon += ";order=" + std::to_string(order);
  canon += ";window=" + std::to_string(window);
  canon += ";mode=" + std::string(to_string(mode));
  canon += ";batch=" + std::to_string(batch_width);
  canon += ";upstream=" + to_hex(upstream);
  canon += ";base=" + std::to_string(BuiltinModel::kWeightBase);
  return sha256(canon);
}

// --- ContextWindow -------------------------------------------------------

void ContextWindow::push(TokenId t) {
  if (capacity_ == 0) return;
  if (size_ < capacity_) {
    buf_[(start_ + size_) % capacity_] = t;
    ++size_;
  } else {
    buf_[start_] = t;
    start_ = (start_ + 1) % capacity_;
  }
}

std::vector<TokenId> ContextWindow::to_vector() const {
  std::vector<TokenId> out;
  out.reserve(size_);
  for (std::size_t i = 0; i < size_; ++i) out.push_back((*this)[i]);
  return out;
}

// --- BuiltinModel --------------------------------------------------------

BuiltinModel::BuiltinModel(std::size_t vocab_size, std::uint8_t order, std::uint32_t window)
    : vocab_size_(vocab_size),
      order_(order),
      key_bits_(std::max(1u, static_cast<unsigned>(std::bit_width(vocab_size > 0 ? vocab_size - 1 : 0)))),
      descriptor_(PredictorDescriptor::builtin(order, window)),
      state_{ContextWindow(window), std::vector<std::uint32_t>(vocab_size, 0), {}, 0},
      extra_(vocab_size, 0) {
  if (vocab_size == 0) throw RangeError("vocabulary is empty");
  if (order > kMaxOrder) throw RangeError("model order above " + std::to_string(kMaxOrder));
  if (order > window) throw RangeError("model order exceeds the context window");
  if (static_cast<unsigned>(order) * key_bits_ > 64)
    throw RangeError("model order too high for a vocabulary of " + std::to_string(vocab_size) + " tokens");
  state_.tables.resize(order);
  by_count_.resize(vocab_size);
  slot_.resize(vocab_size);
  std::iota(by_count_.begin(), by_count_.end(), TokenId{0});
  std::iota(slot_.begin(), slot_.end(), std::uint32_t{0});
}

void BuiltinModel::reset() {
  state_.context.clear();
  std::fill(state_.order0.begin(), state_.order0.end(), 0);
  for (auto& table : state_.tables) table.clear();
  state_.step = 0;
  std::iota(by_count_.begin(), by_count_.end(), TokenId{0});
  std::iota(slot_.begin(), slot_.end(), std::uint32_t{0});
}

std::uint64_t BuiltinModel::context_key(std::size_t order) const {
  const ContextWindow& ctx = state_.context;
  std::uint64_t key = 0;
  for (std::size_t i = ctx.size() - order; i < ctx.size(); ++i) key = key << key_bits_ | ctx[i];
  return key;
}

void BuiltinModel::gather_higher_orders() const {
  Score weight = 1;
  for (std::size_t j = 1; j <= order_; ++j) {
    weight *= kWeightBase;
    if (state_.context.size() < j) break;
    const auto& table = state_.tables[j - 1];
    auto it = table.find(context_key(j));
    if (it == table.end()) continue;
    for (const auto& [token, count] : it->second) {
      if (extra_[token] == 0) touched_.push_back(token);
      extra_[token] += weight * count;
    }
  }
}

void BuiltinModel::release_scratch() const {
  for (TokenId t : touched_) extra_[t] = 0;
  touched_.clear();
}

std::vector<BuiltinModel::Score> BuiltinModel::scores() const {
  gather_higher_orders();
  std::vector<Score> out(vocab_size_);
  for (TokenId t = 0; t < vocab_size_; ++t) out[t] = score_of(t);
  release_scratch();
  return out;
}

Ranking BuiltinModel::rank_next() const {
  gather_higher_orders();
  std::vector<std::pair<Score, TokenId>> live;
  for (TokenId t = 0; t < vocab_size_; ++t)
    if (Score s = score_of(t); s > 0) live.emplace_back(s, t);
  release_scratch();
  std::sort(live.begin(), live.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  });
  std::vector<TokenId> head;
  head.reserve(live.size());
  for (const auto& entry : live) head.push_back(entry.second);
  return Ranking(std::move(head), vocab_size_);
}

std::uint32_t BuiltinModel::rank_of(TokenId actual) const {
  if (actual >= vocab_size_) throw CorruptionError("token id " + std::to_string(actual) + " outside vocabulary");
  gather_higher_orders();
  const Score target = score_of(actual);
  auto beats = [&](Score s, TokenId t) { return s > target || (s == target && t < actual); };

  // Tokens ahead of `actual` judged by order-0 counts alone form a prefix of by_count_.
  std::uint32_t rank = 0;
  if (target <= std::numeric_limits<std::uint32_t>::max()) {
    auto it = std::partition_point(by_count_.begin(), by_count_.end(),
                                   [&](TokenId t) { return beats(state_.order0[t], t); });
    rank = static_cast<std::uint32_t>(it - by_count_.begin());
  }
  for (TokenId t : touched_) {
    if (t == actual) continue;
    rank -= beats(state_.order0[t], t);
    rank += beats(score_of(t), t);
  }
  release_scratch();
  return rank;
}

TokenId BuiltinModel::token_at(std::uint32_t rank) const {
  if (rank >= vocab_size_) throw CorruptionError("rank " + std::to_string(rank) + " outside vocabulary");
  gather_higher_orders();
  candidates_.clear();
  for (TokenId t : touched_) candidates_.emplace_back(score_of(t), t);
  auto ahead = [](const auto& a, const auto& b) { return a.first != b.first ? a.first > b.first : a.second < b.second; };
  const std::size_t needed = std::min<std::size_t>(candidates_.size(), std::size_t{rank} + 1);
  if (needed * 4 > candidates_.size())
    std::sort(candidates_.begin(), candidates_.end(), ahead);
  else
    std::partial_sort(candidates_.begin(), candidates_.begin() + static_cast<std::ptrdiff_t>(needed), candidates_.end(), ahead);

  // Merge the touched tokens with the untouched remainder of by_count_.
  std::size_t i = 0, j = 0;
  TokenId found = 0;
  for (std::uint32_t pos = 0;; ++pos) {
    while (i < by_count_.size() && extra_[by_count_[i]] != 0) ++i;
    bool take_candidate = j < needed;
    if (take_candidate && i < by_count_.size()) {
      const TokenId u = by_count_[i];
      take_candidate = ahead(candidates_[j], std::pair<Score, TokenId>{state_.order0[u], u});
    }
    found = take_candidate ? candidates_[j++].second : by_count_[i++];
    if (pos == rank) break;
  }
  release_scratch();
  return found;
}

void BuiltinModel::advance(TokenId observed) {
  if (observed >= vocab_size_) throw CorruptionError("token id " + std::to_string(observed) + " outside vocabulary");
  for (std::size_t j = 1; j <= order_ && j <= state_.context.size(); ++j) {
    auto& successors = state_.tables[j - 1][context_key(j)];
    auto it = std::find_if(successors.begin(), successors.end(), [&](const auto& e) { return e.first == observed; });
    if (it == successors.end())
      successors.emplace_back(observed, 1);
    else
      ++it->second;
  }
  const std::uint32_t count = ++state_.order0[observed];
  std::uint32_t p = slot_[observed];
  while (p > 0) {
    const TokenId u = by_count_[p - 1];
    if (state_.order0[u] > count || (state_.order0[u] == count && u < observed)) break;
    by_count_[p] = u;
    slot_[u] = p--;
  }
  by_count_[p] = observed;
  slot_[observed] = p;
  state_.context.push(observed);
  ++state_.step;
}

// --- BatchPredictor ------------------------------------------------------

BatchPredictor::BatchPredictor(std::unique_ptr<Predictor> inner, std::uint32_t width)
    : inner_(std::move(inner)), width_(width), descriptor_(inner_->descriptor()) {
  if (width == 0) throw RangeError("batch width must be positive");
  descriptor_.mode = InferenceMode::batch;
  descriptor_.batch_width = width;
  pending_.reserve(width);
}

Ranking BatchPredictor::rank_next() const { return inner_->rank_next(); }
std::uint32_t BatchPredictor::rank_of(TokenId actual) const { return inner_->rank_of(actual); }
TokenId BatchPredictor::token_at(std::uint32_t rank) const { return inner_->token_at(rank); }

void BatchPredictor::advance(TokenId observed) {
  if (observed >= vocab_size()) throw CorruptionError("token id " + std::to_string(observed) + " outside vocabulary");
  pending_.push_back(observed);
  if (pending_.size() < width_) return;
  for (TokenId t : pending_) inner_->advance(t);
  pending_.clear();
}

void BatchPredictor::reset() {
  inner_->reset();
  pending_.clear();
}

// --- Options / factories -------------------------------------------------

PredictorOptions PredictorOptions::parse(std::string_view text) {
  PredictorOptions o;
  if (text == "none") {
    o.kind = PredictorKind::none;
    return o;
  }
  if (text == "builtin") return o;
  if (text.starts_with("builtin-k")) {
    std::string_view digits = text.substr(9);
    unsigned order = 0;
    auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), order);
    if (ec != std::errc() || end != digits.data() + digits.size() || digits.empty() || order > kMaxOrder)
      throw UsageError("bad predictor '" + std::string(text) + "': order must be 0.." + std::to_string(kMaxOrder));
    o.order = static_cast<std::uint8_t>(order);
    return o;
  }
  if (text.starts_with("external:")) {
    o.kind = PredictorKind::external;
    o.address = std::string(text.substr(9));
    if (o.address.empty()) throw UsageError("external predictor needs an address");
    return o;
  }
  throw UsageError("unknown predictor '" + std::string(text) + "' (expected none, builtin-k<N> or external:<address>)");
}

std::string PredictorOptions::name() const {
  switch (kind) {
    case PredictorKind::none: return "none";
    case PredictorKind::builtin: return "builtin-k" + std::to_string(order);
    case PredictorKind::external: return "external:" + address;
  }
  return "unknown";
}

namespace {

std::unique_ptr<Predictor> maybe_batch(std::unique_ptr<Predictor> p, InferenceMode mode, std::uint32_t width) {
  if (mode == InferenceMode::individual) return p;
  return std::make_unique<BatchPredictor>(std::move(p), width);
}

}  // namespace

std::unique_ptr<Predictor> make_predictor(const PredictorOptions& options, const Vocabulary& vocab) {
  switch (options.kind) {
    case PredictorKind::none: throw UsageError("predictor 'none' has no ranking model");
    case PredictorKind::builtin:
      return maybe_batch(std::make_unique<BuiltinModel>(vocab.size(), options.order, options.window), options.mode,
                         options.batch_width);
    case PredictorKind::external:
      return maybe_batch(std::make_unique<ExternalPredictor>(options.address, vocab, options.window), options.mode,
                         options.batch_width);
  }
  throw UsageError("unknown predictor kind");
}

std::unique_ptr<Predictor> make_builtin(const PredictorDescriptor& descriptor, std::size_t vocab_size) {
  if (descriptor.kind != PredictorKind::builtin) throw UsageError("descriptor is not a built-in predictor");
  return maybe_batch(std::make_unique<BuiltinModel>(vocab_size, descriptor.order, descriptor.window),
                     descriptor.mode, descriptor.batch_width);
}

}  // namespace rankzip
