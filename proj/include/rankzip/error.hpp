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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rankzip {

// Base of every error thrown by the library. The CLI maps the concrete
// types below onto its exit-code table.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or damaged data: bad token ids, out-of-range ranks, broken
// bitstreams, dangling back-references.
class CorruptionError : public Error {
 public:
  using Error::Error;
};

// Text-level parse failure at a known byte offset.
class ParseError : public CorruptionError {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : CorruptionError(what + " at offset " + std::to_string(offset)), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class ContainerError : public CorruptionError {
 public:
  enum class Kind { bad_magic, bad_version, truncated, malformed, checksum_mismatch, crc_mismatch };

  ContainerError(Kind kind, const std::string& what) : CorruptionError(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

// Decoder refuses to run under a predictor or vocabulary other than the
// one recorded at encode time.
class MismatchError : public Error {
 public:
  MismatchError(const std::string& what, std::string recorded_id)
      : Error(what), recorded_id_(std::move(recorded_id)) {}

  const std::string& recorded_id() const noexcept { return recorded_id_; }

 private:
  std::string recorded_id_;
};

// External predictor unreachable or misbehaving on the wire.
class TransportError : public Error {
 public:
  using Error::Error;
};

// A requested backend or feature was not compiled in.
class CapabilityError : public Error {
 public:
  using Error::Error;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

class RangeError : public UsageError {
 public:
  using UsageError::UsageError;
};

}  // namespace rankzip
