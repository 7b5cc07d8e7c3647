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

// Independent reference computations shared by the unit tests and the
// acceptance binary.

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "rankzip/bytes.hpp"
#include "rankzip/coders/lz77.hpp"

namespace rankzip::oracle {

// Smallest sum f_i * l_i over every length assignment that satisfies the
// Kraft inequality, by exhaustive search. A single symbol costs one bit.
inline std::uint64_t optimal_prefix_cost(const std::vector<std::uint64_t>& freq) {
  const std::size_t n = freq.size();
  if (n == 0) return 0;
  if (n == 1) return freq[0];
  std::vector<unsigned> len(n, 1);
  std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
  for (;;) {
    double kraft = 0;
    std::uint64_t cost = 0;
    for (std::size_t i = 0; i < n; ++i) {
      kraft += std::ldexp(1.0, -static_cast<int>(len[i]));
      cost += freq[i] * len[i];
    }
    if (kraft <= 1.0 && cost < best) best = cost;
    std::size_t i = 0;
    while (i < n && ++len[i] > n - 1) len[i++] = 1;
    if (i == n) return best;
  }
}

inline std::uint64_t code_cost(const std::vector<std::uint64_t>& f, const std::vector<std::uint8_t>& len) {
  std::uint64_t c = 0;
  for (std::size_t i = 0; i < f.size(); ++i) c += f[i] * len[i];
  return c;
}

// Every multiset of `k` frequencies drawn from 1..max_f, in non-decreasing order.
inline void for_each_multiset(std::size_t k, std::uint64_t max_f, const std::function<void(const std::vector<std::uint64_t>&)>& fn) {
  std::vector<std::uint64_t> f(k, 1);
  for (;;) {
    fn(f);
    std::size_t i = k;
    while (i > 0 && f[i - 1] == max_f) --i;
    if (i == 0) return;
    ++f[i - 1];
    for (std::size_t j = i; j < k; ++j) f[j] = f[i - 1];
  }
}


// Cost in bits of coding `data` plus the end-of-stream symbol with an
// adaptive order-0 model: Laplace start, +1 per symbol, every count halved
// (rounding up) once the total reaches 2^24.
inline double adaptive_code_length(BytesView data) {
  std::array<std::uint64_t, 257> count;
  count.fill(1);
  std::uint64_t total = 257;
  double bits = 0;
  auto code = [&](unsigned s) {
    bits -= std::log2(static_cast<double>(count[s]) / static_cast<double>(total));
    ++count[s];
    ++total;
    if (total >= (1u << 24)) {
      total = 0;
      for (auto& c : count) total += c = (c + 1) / 2;
    }
  };
  for (char c : data) code(static_cast<std::uint8_t>(c));
  code(256);
  return bits;
}

// Greedy longest match by trying every distance; ties go to the nearest.
inline std::vector<coders::Lz77Token> lz77_brute_force(BytesView s, std::uint32_t window) {
  std::vector<coders::Lz77Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    std::size_t best_len = 0, best_dist = 0;
    for (std::size_t d = 1; d <= i && d <= window; ++d) {
      std::size_t len = 0;
      while (i + len < s.size() && len < coders::kLz77MaxMatch && s[i + len - d] == s[i + len]) ++len;
      if (len > best_len) {
        best_len = len;
        best_dist = d;
      }
    }
    if (best_len >= coders::kLz77MinMatch) {
      out.push_back(coders::Lz77Token::ref(static_cast<std::uint32_t>(best_dist), static_cast<std::uint32_t>(best_len)));
      i += best_len;
    } else {
      out.push_back(coders::Lz77Token::lit(static_cast<std::uint8_t>(s[i])));
      ++i;
    }
  }
  return out;
}

// Every string of length 0..max_len over the given alphabet.
inline std::vector<Bytes> all_strings(BytesView alphabet, std::size_t max_len) {
  std::vector<Bytes> out{Bytes()};
  std::size_t from = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    const std::size_t to = out.size();
    for (std::size_t i = from; i < to; ++i)
      for (char c : alphabet) out.push_back(out[i] + c);
    from = to;
  }
  return out;
}

inline double entropy_from_histogram(BytesView data) {
  std::vector<double> p(256, 0.0);
  for (char c : data) p[static_cast<std::uint8_t>(c)] += 1.0;
  double h = 0;
  for (double c : p) {
    if (c == 0) continue;
    const double q = c / static_cast<double>(data.size());
    h += q * std::log2(1.0 / q);
  }
  return h;
}

}  // namespace rankzip::oracle
