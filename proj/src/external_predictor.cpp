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

#include "rankzip/external_predictor.hpp"

#include "rankzip/error.hpp"

namespace rankzip {

ExternalPredictor::ExternalPredictor(std::string address, const Vocabulary& vocab, std::uint32_t window)
    : address_(std::move(address)), vocab_size_(vocab.size()), context_(window) {
  channel_ = protocol::LineChannel::connect(address_);
  channel_.write_line(protocol::format_hello(vocab.fingerprint()));
  auto reply = channel_.read_line();
  if (!reply) throw TransportError("external predictor at " + address_ + " closed the connection during handshake");
  protocol::Welcome welcome = protocol::parse_welcome(*reply);

  descriptor_.kind = PredictorKind::external;
  descriptor_.id = "external:" + welcome.predictor_id;
  descriptor_.order = 0;
  descriptor_.window = window;
  descriptor_.upstream = welcome.predictor_fingerprint;
}

ExternalPredictor::~ExternalPredictor() {
  try {
    if (channel_.is_open()) channel_.write_line("BYE");
  } catch (const Error&) {
  }
}

const Ranking& ExternalPredictor::fetch() const {
  if (cached_) return *cached_;
  channel_.write_line(protocol::format_rank(context_.to_vector()));
  auto reply = channel_.read_line();
  if (!reply) throw TransportError("external predictor at " + address_ + " closed the connection");
  if (reply->starts_with("ERR")) throw TransportError("external predictor error: " + *reply);
  try {
    cached_ = std::make_unique<Ranking>(protocol::parse_tops(*reply, vocab_size_), vocab_size_);
  } catch (const CorruptionError& e) {
    throw TransportError(std::string("malformed reply from external predictor: ") + e.what());
  }
  return *cached_;
}

void ExternalPredictor::advance(TokenId observed) {
  if (observed >= vocab_size_) throw CorruptionError("token id " + std::to_string(observed) + " outside vocabulary");
  context_.push(observed);
  ++step_;
  cached_.reset();
}

void ExternalPredictor::reset() {
  context_.clear();
  step_ = 0;
  cached_.reset();
}

}  // namespace rankzip
