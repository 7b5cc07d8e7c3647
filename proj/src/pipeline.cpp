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

#include "rankzip/pipeline.hpp"

#include <charconv>
#include <memory>
#include <vector>

#include "rankzip/error.hpp"
#include "rankzip/external_predictor.hpp"
#include "rankzip/hashing.hpp"

namespace rankzip {
namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const std::size_t at = s.find(sep, start);
    parts.push_back(s.substr(start, at == std::string_view::npos ? std::string_view::npos : at - start));
    if (at == std::string_view::npos) return parts;
    start = at + 1;
  }
}

using ContainerKind = ContainerError::Kind;

}  // namespace

coders::CoderSpec parse_coder_spec(std::string_view text) {
  using coders::CoderId;
  for (CoderId id : coders::kAllCoders)
    if (coders::to_string(id) == text) return coders::CoderSpec::with_defaults(id);
  const std::size_t dash = text.rfind('-');
  if (dash != std::string_view::npos) {
    const CoderId id = coders::parse_coder(text.substr(0, dash));
    std::string_view digits = text.substr(dash + 1);
    if (id == CoderId::lz77 && digits.starts_with('w')) digits.remove_prefix(1);
    std::uint32_t param = 0;
    auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), param);
    if (digits.empty() || ec != std::errc() || end != digits.data() + digits.size())
      throw UsageError("bad coder parameter in '" + std::string(text) + "'");
    coders::CoderSpec spec{id, param};
    spec.validate();
    return spec;
  }
  return coders::CoderSpec::with_defaults(coders::parse_coder(text));
}

PipelineSpec PipelineSpec::parse(std::string_view text) {
  const auto parts = split(text, '+');
  PipelineSpec spec;
  if (parts.size() == 2) {
    spec.predictor = PredictorOptions::parse(parts[0]);
    if (spec.predictor.kind != PredictorKind::none)
      throw UsageError("pipeline '" + std::string(text) + "' needs a serialization: <predictor>+<serialization>+<coder>");
    spec.serialization = RankSerialization::none;
    spec.coder = parse_coder_spec(parts[1]);
  } else if (parts.size() == 3) {
    spec.predictor = PredictorOptions::parse(parts[0]);
    if (spec.predictor.kind == PredictorKind::none)
      throw UsageError("pipeline '" + std::string(text) + "': predictor none takes no serialization");
    spec.serialization = parse_serialization(parts[1]);
    if (spec.serialization == RankSerialization::none)
      throw UsageError("pipeline '" + std::string(text) + "': serialization must be varint or ascii-dot");
    spec.coder = parse_coder_spec(parts[2]);
  } else {
    throw UsageError("bad pipeline '" + std::string(text) + "' (expected none+<coder> or <predictor>+<serialization>+<coder>)");
  }
  return spec;
}

std::string PipelineSpec::name() const {
  if (predictor.kind == PredictorKind::none) return "none+" + coder.name();
  return predictor.name() + "+" + std::string(to_string(serialization)) + "+" + coder.name();
}

void PipelineSpec::validate() const {
  if ((predictor.kind == PredictorKind::none) != (serialization == RankSerialization::none))
    throw UsageError("a rank serialization is used exactly when a predictor is");
  coder.validate();
  coders::require_available(coder.id);
}

Bytes compress_text(BytesView text, const PipelineSpec& spec, const Vocabulary& vocab, Predictor* predictor) {
  spec.validate();
  ContainerMeta meta;
  meta.coder = spec.coder;
  meta.original_length = text.size();
  meta.text_crc32 = crc32(text);
  meta.serialization = spec.serialization;

  Bytes payload;
  if (spec.predictor.kind == PredictorKind::none) {
    meta.predictor = PredictorDescriptor{};
    meta.predictor.kind = PredictorKind::none;
    payload = coders::compress(spec.coder, text);
  } else {
    std::unique_ptr<Predictor> owned;
    if (!predictor) {
      owned = make_predictor(spec.predictor, vocab);
      predictor = owned.get();
    }
    const RankStream ranks = encode_ranks(text, *predictor, vocab);
    meta.predictor = predictor->descriptor();
    meta.predictor_fingerprint = ranks.predictor_fingerprint;
    meta.vocab_fingerprint = ranks.vocab_fingerprint;
    meta.token_count = ranks.token_count;
    payload = coders::compress(spec.coder, serialize_ranks(ranks, spec.serialization));
  }
  return pack(meta, payload);
}

Bytes decompress_text(BytesView container, const Vocabulary& vocab, const DecompressOptions& options) {
  const Container c = unpack(container);
  const ContainerMeta& m = c.meta;
  coders::require_available(m.coder.id);

  Bytes text;
  if (m.predictor.kind == PredictorKind::none) {
    text = coders::decompress(m.coder, c.payload);
  } else {
    if (vocab.fingerprint() != m.vocab_fingerprint)
      throw MismatchError("vocabulary mismatch: container needs vocabulary " + to_hex(m.vocab_fingerprint) +
                              ", got " + to_hex(vocab.fingerprint()),
                          m.predictor.id);
    std::unique_ptr<Predictor> owned;
    Predictor* predictor = options.predictor;
    if (!predictor) {
      if (m.predictor.kind == PredictorKind::builtin) {
        owned = make_builtin(m.predictor, vocab.size());
      } else {
        if (options.external_address.empty())
          throw TransportError("container was made with external predictor '" + m.predictor.id +
                               "'; pass --predictor external:<address> pointing at that server");
        PredictorOptions o;
        o.kind = PredictorKind::external;
        o.address = options.external_address;
        o.window = m.predictor.window;
        o.mode = m.predictor.mode;
        o.batch_width = m.predictor.batch_width;
        owned = make_predictor(o, vocab);
      }
      predictor = owned.get();
    }
    if (predictor->descriptor().fingerprint() != m.predictor_fingerprint)
      throw MismatchError("predictor mismatch: container was made with '" + m.predictor.id + "' (" +
                              to_hex(m.predictor_fingerprint) + ")",
                          m.predictor.id);

    RankStream ranks = deserialize_ranks(coders::decompress(m.coder, c.payload), m.serialization);
    if (ranks.token_count != m.token_count)
      throw ContainerError(ContainerKind::malformed, "rank count " + std::to_string(ranks.token_count) +
                                                         " does not match the recorded token count " +
                                                         std::to_string(m.token_count));
    ranks.predictor_fingerprint = m.predictor_fingerprint;
    ranks.vocab_fingerprint = m.vocab_fingerprint;
    text = decode_ranks(ranks, *predictor, vocab);
  }
  if (text.size() != m.original_length)
    throw ContainerError(ContainerKind::crc_mismatch, "decoded length " + std::to_string(text.size()) +
                                                          " differs from recorded " + std::to_string(m.original_length));
  if (crc32(text) != m.text_crc32) throw ContainerError(ContainerKind::crc_mismatch, "decoded text fails its CRC-32");
  return text;
}

}  // namespace rankzip
