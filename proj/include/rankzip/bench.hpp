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
#include <string>
#include <string_view>
#include <vector>

#include "rankzip/metrics.hpp"
#include "rankzip/pipeline.hpp"
#include "rankzip/tokenizer.hpp"

namespace rankzip::bench {

inline constexpr std::uint64_t kDefaultTruncateChars = 10000;

struct BenchPlan {
  // Files, directories (every regular file inside, sorted) or glob patterns.
  std::vector<std::string> inputs;
  std::uint64_t truncate_chars = kDefaultTruncateChars;  // 0 keeps whole files
  std::vector<PipelineSpec> pipelines;
  unsigned repetitions = 1;
  bool strip_gutenberg_header = false;
  unsigned jobs = 1;  // files compressed and verified in parallel
};

enum class RowStatus { ok, failed };

struct ReportRow {
  std::string input;
  std::string pipeline;
  MetricsRecord metrics;
  RowStatus status = RowStatus::ok;
  std::string error;  // set when failed
};

struct Aggregate {
  std::string pipeline;
  std::size_t files = 0;
  double ratio = 0;
  double bpc = 0;
  double entropy = 0;
  double elapsed = 0;
};

struct InputError {
  std::string input;
  std::string message;
};

struct Report {
  std::uint64_t truncate_chars = 0;
  std::vector<ReportRow> rows;
  std::vector<Aggregate> aggregates;  // mean of verified rows, plan order
  std::vector<InputError> input_errors;
  std::vector<std::string> notes;

  bool any_failed() const;
};

enum class ReportFormat { csv, markdown, json };

ReportFormat parse_report_format(std::string_view name);

// Expands directories and glob patterns. A path that matches nothing is
// passed through unchanged.
std::vector<std::string> resolve_inputs(const std::vector<std::string>& inputs);

// First `chars` Unicode scalar values of the text; 0 keeps everything.
Bytes truncate_scalars(BytesView text, std::uint64_t chars);

// Keeps the text between the "*** START OF" and "*** END OF" marker lines
// when present.
Bytes strip_gutenberg(BytesView text);

// Every pipeline is validated before any file is read. Each (input,
// pipeline) pair is compressed, decompressed and compared; elapsed is the
// median compression time over the repetitions, measured sequentially.
Report run_plan(const BenchPlan& plan, const Vocabulary& vocab);

std::string emit_report(const Report& report, ReportFormat format);

}  // namespace rankzip::bench
