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

#include "rankzip/metrics.hpp"

#include <array>
#include <cmath>

#include "rankzip/error.hpp"

namespace rankzip {

double compression_ratio(std::uint64_t uncompressed, std::uint64_t compressed) {
  if (compressed == 0) throw RangeError("compression ratio undefined for a zero-byte output");
  return static_cast<double>(uncompressed) / static_cast<double>(compressed);
}

double bits_per_character(std::uint64_t compressed, std::uint64_t chars) {
  if (chars == 0) throw RangeError("bits per character undefined for empty input");
  return 8.0 * static_cast<double>(compressed) / static_cast<double>(chars);
}

double shannon_entropy(BytesView data) {
  if (data.empty()) throw RangeError("entropy undefined for empty input");
  std::array<std::uint64_t, 256> hist{};
  for (char c : data) ++hist[static_cast<std::uint8_t>(c)];
  const double n = static_cast<double>(data.size());
  double h = 0;
  for (std::uint64_t c : hist) {
    if (c == 0 || c == data.size()) continue;
    const double p = static_cast<double>(c) / n;
    h -= p * std::log2(p);
  }
  return h;
}

std::uint64_t count_scalars(BytesView utf8) {
  std::uint64_t n = 0;
  for (char c : utf8)
    if ((static_cast<std::uint8_t>(c) & 0xC0) != 0x80) ++n;
  return n;
}

MetricsRecord MetricsRecord::measure(BytesView original, std::uint64_t compressed_size, double elapsed) {
  MetricsRecord r;
  r.uncompressed_size = original.size();
  r.compressed_size = compressed_size;
  r.char_count = original.size();
  r.scalar_count = count_scalars(original);
  r.ratio = compression_ratio(r.uncompressed_size, compressed_size);
  if (!original.empty()) {
    r.bpc = bits_per_character(compressed_size, r.char_count);
    if (r.scalar_count != 0) r.bits_per_scalar = bits_per_character(compressed_size, r.scalar_count);
    r.entropy = shannon_entropy(original);
  }
  r.elapsed = elapsed;
  return r;
}

}  // namespace rankzip
