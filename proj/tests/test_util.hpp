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

#include <cstdint>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "rankzip/bytes.hpp"

namespace rankzip::testing {

inline Bytes read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

inline Bytes corpus(const std::string& name) { return read_file(std::string(RANKZIP_CORPUS_DIR) + "/" + name); }

inline const std::vector<std::string>& corpus_names() {
  static const std::vector<std::string> names = {"alice29.txt", "asyoulik.txt", "lcet10.txt", "plrabn12.txt",
                                                 "kjv_genesis_exodus.txt"};
  return names;
}

inline std::string english_vocab_path() { return std::string(RANKZIP_DATA_DIR) + "/vocab/lcet10-512.azvb"; }

inline Bytes random_bytes(std::mt19937_64& rng, std::size_t n, unsigned alphabet = 256) {
  Bytes out(n, '\0');
  std::uniform_int_distribution<unsigned> d(0, alphabet - 1);
  for (auto& c : out) c = static_cast<char>(d(rng));
  return out;
}

inline void append_utf8(Bytes& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | cp >> 6));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | cp >> 12));
    out.push_back(static_cast<char>(0x80 | (cp >> 6 & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | cp >> 18));
    out.push_back(static_cast<char>(0x80 | (cp >> 12 & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp >> 6 & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

// Random valid UTF-8 with `scalars` code points: mostly ASCII words, some
// Latin-1, Devanagari, CJK and astral characters.
inline Bytes random_utf8(std::mt19937_64& rng, std::size_t scalars) {
  Bytes out;
  std::uniform_int_distribution<int> kind(0, 99);
  for (std::size_t i = 0; i < scalars; ++i) {
    const int k = kind(rng);
    std::uint32_t cp;
    if (k < 70) cp = "etaoin shrdlu cmfwyp"[rng() % 20];
    else if (k < 80) cp = 0x20 + rng() % 0x5F;
    else if (k < 88) cp = 0xA0 + rng() % 0x160;
    else if (k < 94) cp = 0x900 + rng() % 0x80;
    else if (k < 98) cp = 0x4E00 + rng() % 0x5000;
    else cp = 0x1F300 + rng() % 0x300;
    append_utf8(out, cp);
  }
  return out;
}

}  // namespace rankzip::testing
