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

#include <chrono>
#include <cstdint>
#include <string>
#include <utility>

#include "rankzip/bytes.hpp"

namespace rankzip {

// uncompressed / compressed. Throws RangeError when compressed is zero.
double compression_ratio(std::uint64_t uncompressed, std::uint64_t compressed);

// 8 * compressed / chars. Throws RangeError when chars is zero.
double bits_per_character(std::uint64_t compressed, std::uint64_t chars);

// -sum p_i log2 p_i over the byte histogram. Throws RangeError when empty.
double shannon_entropy(BytesView data);

// Unicode scalar count of UTF-8 text: bytes that are not continuation bytes.
std::uint64_t count_scalars(BytesView utf8);

struct MetricsRecord {
  std::uint64_t uncompressed_size = 0;
  std::uint64_t compressed_size = 0;
  std::uint64_t char_count = 0;    // bytes
  std::uint64_t scalar_count = 0;  // Unicode scalar values
  double ratio = 0;
  double bpc = 0;
  double bits_per_scalar = 0;
  double entropy = 0;
  double elapsed = 0;  // seconds

  static MetricsRecord measure(BytesView original, std::uint64_t compressed_size, double elapsed);
};

template <class F>
auto timed(F&& op) {
  const auto start = std::chrono::steady_clock::now();
  auto result = std::forward<F>(op)();
  const std::chrono::duration<double> d = std::chrono::steady_clock::now() - start;
  return std::pair{std::move(result), d.count()};
}

}  // namespace rankzip
