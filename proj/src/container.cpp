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

#include "rankzip/container.hpp"

#include "rankzip/error.hpp"
#include "rankzip/hashing.hpp"

namespace rankzip {
namespace {

using Kind = ContainerError::Kind;

constexpr Digest kZero{};

// Returns an empty string when consistent, else the reason.
std::string check(const ContainerMeta& m) {
  const auto& p = m.predictor;
  if (p.kind > PredictorKind::external) return "unknown predictor kind";
  if (p.mode > InferenceMode::batch) return "unknown inference mode";
  if (m.serialization > RankSerialization::varint) return "unknown rank serialization";
  if (p.id.size() > 0xFFFF) return "predictor id too long";
  if (p.kind == PredictorKind::none) {
    if (m.serialization != RankSerialization::none) return "rank serialization without a predictor";
    if (!p.id.empty() || m.predictor_fingerprint != kZero || m.vocab_fingerprint != kZero || m.token_count != 0)
      return "predictor fields set in raw-coder mode";
  } else {
    if (m.serialization == RankSerialization::none) return "predictor without a rank serialization";
    if (p.mode == InferenceMode::individual && p.batch_width != 1) return "batch width set in individual mode";
    if (p.mode == InferenceMode::batch && p.batch_width == 0) return "zero batch width";
    if (p.kind == PredictorKind::builtin && p.fingerprint() != m.predictor_fingerprint)
      return "predictor fingerprint does not match its parameters";
    if (m.token_count > m.original_length) return "more tokens than bytes";
  }
  try {
    m.coder.validate();
  } catch (const RangeError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

Bytes pack(const ContainerMeta& meta, BytesView payload) {
  if (auto why = check(meta); !why.empty()) throw UsageError("container: " + why);
  const auto& p = meta.predictor;
  Bytes out(kContainerMagic);
  ByteWriter w(out);
  w.u8(kContainerVersion);
  w.u8(static_cast<std::uint8_t>(p.kind));
  w.u8(p.order);
  w.u32(p.window);
  w.u8(static_cast<std::uint8_t>(p.mode));
  w.u32(p.batch_width);
  w.u16(static_cast<std::uint16_t>(p.id.size()));
  w.raw(p.id);
  w.raw(meta.predictor_fingerprint);
  w.raw(meta.vocab_fingerprint);
  w.u8(static_cast<std::uint8_t>(meta.serialization));
  w.u8(static_cast<std::uint8_t>(meta.coder.id));
  w.u32(meta.coder.param);
  w.u64(meta.token_count);
  w.u64(meta.original_length);
  w.u32(meta.text_crc32);
  w.u64(payload.size());
  w.raw(payload);
  w.u32(crc32(out));
  return out;
}

Container unpack(BytesView data) {
  if (data.size() < kContainerMagic.size() || data.substr(0, kContainerMagic.size()) != kContainerMagic)
    throw ContainerError(Kind::bad_magic, "not an azip container (bad magic)");
  if (data.size() < kContainerMagic.size() + 1) throw ContainerError(Kind::truncated, "container truncated");
  const auto version = static_cast<std::uint8_t>(data[kContainerMagic.size()]);
  if (version != kContainerVersion)
    throw ContainerError(Kind::bad_version, "unsupported container version " + std::to_string(version));

  Container c;
  auto& m = c.meta;
  ByteReader in(data.substr(kContainerMagic.size() + 1));
  try {
    m.predictor.kind = static_cast<PredictorKind>(in.u8());
    m.predictor.order = in.u8();
    m.predictor.window = in.u32();
    m.predictor.mode = static_cast<InferenceMode>(in.u8());
    m.predictor.batch_width = in.u32();
    const std::uint16_t id_len = in.u16();
    m.predictor.id = std::string(in.raw(id_len));
    m.predictor_fingerprint = in.digest();
    m.vocab_fingerprint = in.digest();
    m.serialization = static_cast<RankSerialization>(in.u8());
    m.coder.id = static_cast<coders::CoderId>(in.u8());
    m.coder.param = in.u32();
    m.token_count = in.u64();
    m.original_length = in.u64();
    m.text_crc32 = in.u32();
    const std::uint64_t payload_len = in.u64();
    if (payload_len > in.remaining()) throw ContainerError(Kind::truncated, "container truncated inside payload");
    c.payload = Bytes(in.raw(static_cast<std::size_t>(payload_len)));
  } catch (const ContainerError&) {
    throw;
  } catch (const CorruptionError&) {
    throw ContainerError(Kind::truncated, "container truncated inside header");
  }
  if (in.remaining() < 4) throw ContainerError(Kind::truncated, "container truncated before checksum");
  if (in.remaining() > 4) throw ContainerError(Kind::malformed, "trailing data after container");
  const std::size_t body = data.size() - 4;
  ByteReader tail(data.substr(body));
  if (tail.u32() != crc32(data.substr(0, body)))
    throw ContainerError(Kind::checksum_mismatch, "container checksum mismatch");

  if (m.coder.id < coders::CoderId::huffman || m.coder.id > coders::CoderId::brotli)
    throw ContainerError(Kind::malformed, "unknown coder id " + std::to_string(static_cast<int>(m.coder.id)));
  if (m.predictor.kind == PredictorKind::builtin) {
    if (m.predictor.id != "builtin-k" + std::to_string(m.predictor.order))
      throw ContainerError(Kind::malformed, "built-in predictor id does not match its order");
  }
  if (auto why = check(m); !why.empty()) throw ContainerError(Kind::malformed, "container: " + why);
  return c;
}

}  // namespace rankzip
