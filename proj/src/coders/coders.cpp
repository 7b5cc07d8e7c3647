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

#include "rankzip/coders/coders.hpp"

#include "rankzip/coders/adaptive_huffman.hpp"
#include "rankzip/coders/arithmetic.hpp"
#include "rankzip/coders/backend.hpp"
#include "rankzip/coders/huffman.hpp"
#include "rankzip/coders/lz77.hpp"
#include "rankzip/error.hpp"

namespace rankzip::coders {

std::string_view to_string(CoderId id) {
  switch (id) {
    case CoderId::huffman: return "huffman";
    case CoderId::adaptive_huffman: return "adaptive-huffman";
    case CoderId::arithmetic: return "arithmetic";
    case CoderId::lz77: return "lz77";
    case CoderId::deflate: return "deflate";
    case CoderId::brotli: return "brotli";
  }
  return "unknown";
}

CoderId parse_coder(std::string_view name) {
  for (CoderId id : kAllCoders)
    if (to_string(id) == name) return id;
  throw UsageError("unknown coder '" + std::string(name) +
                   "' (expected huffman, adaptive-huffman, arithmetic, lz77, deflate or brotli)");
}

CoderSpec CoderSpec::with_defaults(CoderId id) {
  switch (id) {
    case CoderId::lz77: return {id, kLz77DefaultWindow};
    case CoderId::deflate: return {id, kDefaultDeflateLevel};
    case CoderId::brotli: return {id, kDefaultBrotliQuality};
    default: return {id, 0};
  }
}

void CoderSpec::validate() const {
  switch (id) {
    case CoderId::lz77:
      if (param == 0 || param > kLz77MaxWindow) throw RangeError("lz77 window must be in 1..65536");
      return;
    case CoderId::deflate:
      if (param > 9) throw RangeError("deflate level must be in 0..9");
      return;
    case CoderId::brotli:
      if (param > 11) throw RangeError("brotli quality must be in 0..11");
      return;
    case CoderId::huffman:
    case CoderId::adaptive_huffman:
    case CoderId::arithmetic:
      if (param != 0) throw RangeError(std::string(to_string(id)) + " takes no parameter");
      return;
  }
  throw RangeError("unknown coder id " + std::to_string(static_cast<int>(id)));
}

std::string CoderSpec::name() const {
  std::string s(to_string(id));
  switch (id) {
    case CoderId::lz77: return s + "-w" + std::to_string(param);
    case CoderId::deflate:
    case CoderId::brotli: return s + "-" + std::to_string(param);
    default: return s;
  }
}

bool coder_available(CoderId id) noexcept { return id != CoderId::brotli || brotli_available(); }

std::vector<CoderId> available_coders() {
  std::vector<CoderId> out;
  for (CoderId id : kAllCoders)
    if (coder_available(id)) out.push_back(id);
  return out;
}

void require_available(CoderId id) {
  if (coder_available(id)) return;
  std::string list;
  for (CoderId a : available_coders()) {
    if (!list.empty()) list += ", ";
    list += to_string(a);
  }
  throw CapabilityError("coder '" + std::string(to_string(id)) + "' is not available in this build; available: " + list);
}

Bytes compress(const CoderSpec& spec, BytesView data) {
  spec.validate();
  require_available(spec.id);
  switch (spec.id) {
    case CoderId::huffman: return huffman_compress(data);
    case CoderId::adaptive_huffman: return adaptive_huffman_compress(data);
    case CoderId::arithmetic: return arithmetic_compress(data);
    case CoderId::lz77: return lz77_compress(data, spec.param);
    case CoderId::deflate: return deflate_compress(data, static_cast<int>(spec.param));
    case CoderId::brotli: return brotli_compress(data, static_cast<int>(spec.param));
  }
  throw UsageError("unknown coder");
}

Bytes decompress(const CoderSpec& spec, BytesView data) {
  require_available(spec.id);
  switch (spec.id) {
    case CoderId::huffman: return huffman_decompress(data);
    case CoderId::adaptive_huffman: return adaptive_huffman_decompress(data);
    case CoderId::arithmetic: return arithmetic_decompress(data);
    case CoderId::lz77: return lz77_decompress(data);
    case CoderId::deflate: return deflate_decompress(data);
    case CoderId::brotli: return brotli_decompress(data);
  }
  throw CorruptionError("unknown coder id " + std::to_string(static_cast<int>(spec.id)));
}

}  // namespace rankzip::coders
