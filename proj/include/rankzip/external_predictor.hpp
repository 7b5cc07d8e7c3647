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

#include <memory>
#include <string>

#include "rankzip/predictor.hpp"
#include "rankzip/protocol.hpp"

namespace rankzip {

// Client for a predictor served over the line protocol. The handshake runs
// in the constructor; the server's fingerprint becomes part of this
// predictor's descriptor.
// Each ranking is fetched once and cached until the next advance().
class ExternalPredictor final : public Predictor {
 public:
  ExternalPredictor(std::string address, const Vocabulary& vocab, std::uint32_t window = kDefaultWindow);
  ~ExternalPredictor() override;

  const PredictorDescriptor& descriptor() const override { return descriptor_; }
  std::size_t vocab_size() const override { return vocab_size_; }
  Ranking rank_next() const override { return fetch(); }
  std::uint32_t rank_of(TokenId actual) const override { return fetch().rank_of(actual); }
  TokenId token_at(std::uint32_t rank) const override { return fetch().token_at(rank); }
  void advance(TokenId observed) override;
  std::uint64_t step() const override { return step_; }
  void reset() override;

  const std::string& address() const noexcept { return address_; }

 private:
  const Ranking& fetch() const;

  std::string address_;
  std::size_t vocab_size_;
  PredictorDescriptor descriptor_;
  ContextWindow context_;
  std::uint64_t step_ = 0;
  mutable protocol::LineChannel channel_;
  mutable std::unique_ptr<Ranking> cached_;
};

}  // namespace rankzip
