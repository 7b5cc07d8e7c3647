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

#include "rankzip/rank_codec.hpp"

#include <limits>

#include "rankzip/error.hpp"

namespace rankzip {

std::string_view to_string(RankSerialization mode) {
  switch (mode) {
    case RankSerialization::none: return "none";
    case RankSerialization::ascii_dot: return "ascii-dot";
    case RankSerialization::varint: return "varint";
  }
  return "unknown";
}

RankSerialization parse_serialization(std::string_view name) {
  if (name == "varint") return RankSerialization::varint;
  if (name == "ascii-dot") return RankSerialization::ascii_dot;
  if (name == "none") return RankSerialization::none;
  throw UsageError("unknown rank serialization '" + std::string(name) + "' (expected varint or ascii-dot)");
}

RankStream encode_ranks(BytesView text, Predictor& predictor, const Vocabulary& vocab) {
  if (predictor.vocab_size() != vocab.size())
    throw MismatchError("predictor and vocabulary disagree on vocabulary size", predictor.descriptor().id);
  predictor.reset();
  TokenSequence tokens = tokenize(text, vocab);
  RankStream out;
  out.ranks.reserve(tokens.tokens.size());
  for (TokenId t : tokens.tokens) {
    out.ranks.push_back(predictor.rank_of(t));
    predictor.advance(t);
  }
  out.token_count = out.ranks.size();
  out.predictor_fingerprint = predictor.descriptor().fingerprint();
  out.vocab_fingerprint = vocab.fingerprint();
  return out;
}

Bytes decode_ranks(const RankStream& stream, Predictor& predictor, const Vocabulary& vocab) {
  const PredictorDescriptor& desc = predictor.descriptor();
  if (stream.predictor_fingerprint != desc.fingerprint())
    throw MismatchError("predictor mismatch: stream was encoded by a different predictor than " + desc.id, desc.id);
  if (stream.vocab_fingerprint != vocab.fingerprint())
    throw MismatchError("vocabulary mismatch: stream was encoded with a different vocabulary", desc.id);
  if (predictor.vocab_size() != vocab.size())
    throw MismatchError("predictor and vocabulary disagree on vocabulary size", desc.id);
  if (stream.ranks.size() != stream.token_count) throw CorruptionError("rank count does not match token count");

  predictor.reset();
  std::vector<TokenId> tokens;
  tokens.reserve(stream.ranks.size());
  for (std::uint32_t r : stream.ranks) {
    TokenId t = predictor.token_at(r);
    tokens.push_back(t);
    predictor.advance(t);
  }
  return detokenize(tokens, vocab);
}

Bytes serialize_ranks(const std::vector<std::uint32_t>& ranks, RankSerialization mode) {
  Bytes out;
  switch (mode) {
    case RankSerialization::ascii_dot:
      for (std::size_t i = 0; i < ranks.size(); ++i) {
        if (i > 0) out.push_back('.');
        out += std::to_string(ranks[i]);
      }
      break;
    case RankSerialization::varint: {
      ByteWriter w(out);
      for (std::uint32_t r : ranks) w.varint(r);
      break;
    }
    case RankSerialization::none: throw UsageError("serialization 'none' carries no ranks");
  }
  return out;
}

namespace {

std::vector<std::uint32_t> parse_ascii_dot(BytesView data) {
  std::vector<std::uint32_t> ranks;
  if (data.empty()) return ranks;
  std::size_t field = 0;
  while (true) {
    std::size_t end = field;
    std::uint64_t value = 0;
    while (end < data.size() && data[end] != '.') {
      char c = data[end];
      if (c < '0' || c > '9') throw ParseError("non-digit in rank field", end);
      value = value * 10 + static_cast<std::uint64_t>(c - '0');
      if (value > std::numeric_limits<std::uint32_t>::max()) throw ParseError("rank overflows 32 bits", field);
      ++end;
    }
    if (end == field) throw ParseError("empty rank field", field);
    if (data[field] == '0' && end - field > 1) throw ParseError("leading zero in rank field", field);
    ranks.push_back(static_cast<std::uint32_t>(value));
    if (end == data.size()) break;
    field = end + 1;
    if (field == data.size()) throw ParseError("empty rank field", field);
  }
  return ranks;
}

std::vector<std::uint32_t> parse_varints(BytesView data) {
  std::vector<std::uint32_t> ranks;
  std::size_t pos = 0;
  while (pos < data.size()) {
    const std::size_t start = pos;
    std::uint64_t value = 0;
    int shift = 0;
    for (;;) {
      if (pos >= data.size()) throw ParseError("truncated varint", start);
      auto b = static_cast<std::uint8_t>(data[pos++]);
      value |= static_cast<std::uint64_t>(b & 0x7F) << shift;
      if (value > std::numeric_limits<std::uint32_t>::max()) throw ParseError("rank overflows 32 bits", start);
      if ((b & 0x80) == 0) {
        if (b == 0 && shift > 0) throw ParseError("overlong varint", start);
        break;
      }
      shift += 7;
      if (shift > 28) throw ParseError("varint too long", start);
    }
    ranks.push_back(static_cast<std::uint32_t>(value));
  }
  return ranks;
}

}  // namespace

RankStream deserialize_ranks(BytesView data, RankSerialization mode) {
  RankStream out;
  switch (mode) {
    case RankSerialization::ascii_dot: out.ranks = parse_ascii_dot(data); break;
    case RankSerialization::varint: out.ranks = parse_varints(data); break;
    case RankSerialization::none: throw UsageError("serialization 'none' carries no ranks");
  }
  out.token_count = out.ranks.size();
  return out;
}

}  // namespace rankzip
