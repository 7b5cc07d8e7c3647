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

#include <string>
#include <string_view>

#include "rankzip/bytes.hpp"
#include "rankzip/coders/coders.hpp"
#include "rankzip/container.hpp"
#include "rankzip/predictor.hpp"
#include "rankzip/rank_codec.hpp"
#include "rankzip/tokenizer.hpp"

namespace rankzip {

// predictor + serialization + coder. Written as
//   none+<coder>   or   <predictor>+<serialization>+<coder>
// e.g. "none+deflate", "builtin-k3+varint+brotli". A coder may carry its
// parameter: "deflate-6", "brotli-5", "lz77-w4096".
struct PipelineSpec {
  PredictorOptions predictor;
  RankSerialization serialization = RankSerialization::varint;
  coders::CoderSpec coder = coders::CoderSpec::with_defaults(coders::CoderId::deflate);

  static PipelineSpec parse(std::string_view text);
  std::string name() const;
  // Throws UsageError / RangeError / CapabilityError.
  void validate() const;
};

coders::CoderSpec parse_coder_spec(std::string_view text);

// Text -> container. `predictor` may be supplied already connected (it is
// reset first); otherwise one is built from spec.predictor.
Bytes compress_text(BytesView text, const PipelineSpec& spec, const Vocabulary& vocab, Predictor* predictor = nullptr);

struct DecompressOptions {
  // Address to reach an external predictor recorded in the container.
  std::string external_address;
  // Used instead of building one when set.
  Predictor* predictor = nullptr;
};

// Container -> text. Throws ContainerError on damage (crc_mismatch when the
// reconstructed text fails its CRC), MismatchError when the vocabulary or
// predictor differs from the recorded one, TransportError when a recorded
// external predictor cannot be reached.
Bytes decompress_text(BytesView container, const Vocabulary& vocab, const DecompressOptions& options = {});

}  // namespace rankzip
