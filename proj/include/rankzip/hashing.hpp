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

#include "rankzip/bytes.hpp"

namespace rankzip {

Digest sha256(BytesView data);

// IEEE 802.3 CRC-32, the same polynomial gzip uses.
std::uint32_t crc32(BytesView data);
std::uint32_t crc32(std::uint32_t running, BytesView data);

}  // namespace rankzip
