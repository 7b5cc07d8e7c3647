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

#include <vector>

#include "rankzip/error.hpp"
#include "rankzip/predictor.hpp"

namespace rankzip::testing {

// Knows the text in advance and always ranks the true next token first.
// Past the end it keeps predicting token 0.
class OraclePredictor final : public Predictor {
 public:
  OraclePredictor(std::vector<TokenId> script, std::size_t vocab_size) : script_(std::move(script)), vocab_(vocab_size) {
    desc_.kind = PredictorKind::external;
    desc_.id = "oracle";
    desc_.order = 0;
  }

  const PredictorDescriptor& descriptor() const override { return desc_; }
  std::size_t vocab_size() const override { return vocab_; }
  Ranking rank_next() const override {
    return Ranking({step_ < script_.size() ? script_[step_] : TokenId{0}}, vocab_);
  }
  void advance(TokenId observed) override {
    if (observed >= vocab_) throw CorruptionError("bad token");
    ++step_;
  }
  std::uint64_t step() const override { return step_; }
  void reset() override { step_ = 0; }

 private:
  std::vector<TokenId> script_;
  std::size_t vocab_;
  std::size_t step_ = 0;
  PredictorDescriptor desc_;
};

}  // namespace rankzip::testing
