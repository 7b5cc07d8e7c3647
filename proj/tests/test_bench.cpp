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

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "rankzip/bench.hpp"
#include "rankzip/error.hpp"
#include "test_util.hpp"

using namespace rankzip;
using namespace rankzip::bench;
namespace fs = std::filesystem;

namespace {

BenchPlan small_plan() {
  BenchPlan plan;
  plan.inputs = {std::string(RANKZIP_CORPUS_DIR) + "/alice29.txt", std::string(RANKZIP_CORPUS_DIR) + "/asyoulik.txt"};
  plan.truncate_chars = 3000;
  plan.pipelines = {PipelineSpec::parse("none+deflate"), PipelineSpec::parse("builtin-k3+varint+deflate")};
  return plan;
}

// Minimal RFC 4180 reader: quoted fields, doubled quotes.
std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows(1);
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') field += '"', ++i;
      else if (c == '"') quoted = false;
      else field += c;
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      rows.back().push_back(field), field.clear();
    } else if (c == '\n') {
      rows.back().push_back(field), field.clear();
      rows.emplace_back();
    } else {
      field += c;
    }
  }
  if (rows.back().empty()) rows.pop_back();
  return rows;
}

}  // namespace

TEST_CASE("truncation counts Unicode scalars") {
  CHECK(truncate_scalars("hello", 3) == "hel");
  CHECK(truncate_scalars("hello", 0) == "hello");
  CHECK(truncate_scalars("hi", 10) == "hi");
  const Bytes hindi = "\xe0\xa4\xb9\xe0\xa4\xbf\xe0\xa4\x82";  // 3 scalars, 9 bytes
  CHECK(truncate_scalars(hindi, 2) == hindi.substr(0, 6));
}

TEST_CASE("gutenberg stripping") {
  const Bytes raw = "header\n*** START OF THE BOOK ***\nbody line\n*** END OF THE BOOK ***\nlicense\n";
  CHECK(strip_gutenberg(raw) == "body line\n");
  CHECK(strip_gutenberg("plain text") == "plain text");
}

TEST_CASE("empty input list gives an empty report") {
  BenchPlan plan;
  plan.pipelines = {PipelineSpec::parse("none+deflate")};
  const Report r = run_plan(plan, Vocabulary::byte_level());
  CHECK(r.rows.empty());
  CHECK_FALSE(r.any_failed());
  CHECK(r.aggregates.size() == 1);
  CHECK(r.aggregates[0].files == 0);
}

TEST_CASE("rows, aggregates and verification") {
  const Vocabulary vocab = Vocabulary::load(testing::english_vocab_path());
  BenchPlan plan = small_plan();
  plan.jobs = 3;
  plan.inputs.push_back("/nonexistent/file.txt");
  const Report r = run_plan(plan, vocab);
  REQUIRE(r.rows.size() == 4);
  CHECK_FALSE(r.any_failed());
  REQUIRE(r.input_errors.size() == 1);
  CHECK(r.input_errors[0].input == "/nonexistent/file.txt");
  for (const auto& row : r.rows) {
    CHECK(row.metrics.uncompressed_size == 3000);
    CHECK(row.metrics.ratio == doctest::Approx(3000.0 / static_cast<double>(row.metrics.compressed_size)));
    CHECK(row.metrics.elapsed > 0);
  }
  for (const auto& a : r.aggregates) {
    double sum = 0;
    for (const auto& row : r.rows)
      if (row.pipeline == a.pipeline) sum += row.metrics.ratio;
    CHECK(a.files == 2);
    CHECK(std::abs(a.ratio - sum / 2) <= 1e-9);
  }
}

TEST_CASE("elapsed is the median of the repetitions") {
  BenchPlan plan = small_plan();
  plan.pipelines.resize(1);
  plan.inputs.resize(1);
  plan.repetitions = 3;
  const Report r = run_plan(plan, Vocabulary::byte_level());
  REQUIRE(r.rows.size() == 1);
  CHECK(r.rows[0].metrics.elapsed > 0);
  bool noted = false;
  for (const auto& n : r.notes) noted |= n.find("median of 3") != std::string::npos;
  CHECK(noted);
  plan.repetitions = 0;
  CHECK_THROWS_AS(run_plan(plan, Vocabulary::byte_level()), UsageError);
}

TEST_CASE("failed verification marks the row") {
  // An external predictor nobody serves: compression fails, the row is
  // FAILED and kept out of the aggregates.
  BenchPlan plan = small_plan();
  plan.pipelines.push_back(PipelineSpec::parse("external:127.0.0.1:1+varint+deflate"));
  const Report r = run_plan(plan, Vocabulary::byte_level());
  CHECK(r.any_failed());
  std::size_t failed = 0;
  for (const auto& row : r.rows)
    if (row.status == RowStatus::failed) {
      ++failed;
      CHECK_FALSE(row.error.empty());
    }
  CHECK(failed == 2);
  CHECK(r.aggregates.back().files == 0);
  const std::string csv = emit_report(r, ReportFormat::csv);
  CHECK(csv.find("FAILED") != std::string::npos);
}

TEST_CASE("reports in three formats") {
  const Report r = run_plan(small_plan(), Vocabulary::load(testing::english_vocab_path()));

  const auto rows = parse_csv(emit_report(r, ReportFormat::csv));
  REQUIRE(rows.size() == 5);
  CHECK(rows[0] == std::vector<std::string>{"input", "pipeline", "uncompressed", "compressed", "ratio", "bpc", "entropy",
                                            "elapsed", "bits_per_scalar", "status"});
  for (std::size_t i = 1; i < rows.size(); ++i) {
    REQUIRE(rows[i].size() == 10);
    CHECK(std::stod(rows[i][4]) == doctest::Approx(r.rows[i - 1].metrics.ratio).epsilon(1e-5));
    CHECK(rows[i][9] == "ok");
  }

  const auto j = nlohmann::json::parse(emit_report(r, ReportFormat::json));
  CHECK(j["schema"] == "rankzip-bench/1");
  CHECK(j["truncate_chars"] == 3000);
  REQUIRE(j["rows"].size() == 4);
  for (const auto& row : j["rows"]) {
    for (const char* key : {"input", "pipeline", "uncompressed", "compressed", "ratio", "bpc", "entropy", "elapsed",
                            "bits_per_scalar", "status"})
      CHECK(row.contains(key));
  }
  CHECK(j["aggregates"].size() == 2);
  CHECK(j["errors"].is_array());
  CHECK(j["notes"].is_array());

  const std::string md = emit_report(r, ReportFormat::markdown);
  CHECK(md.starts_with("| input | pipeline | uncompressed | compressed | ratio | bpc | entropy | elapsed (s) |"));
  CHECK(md.find("| dataset | none+deflate-9 ratio | builtin-k3+varint+deflate-9 ratio | builtin-k3+varint+deflate-9 bpc |") !=
        std::string::npos);
  CHECK(md.find("| average |") != std::string::npos);
  CHECK(emit_report(r, ReportFormat::markdown) == md);
  CHECK_THROWS_AS(parse_report_format("xml"), UsageError);
}

TEST_CASE("inputs expand directories and globs") {
  const fs::path dir = fs::temp_directory_path() / "rankzip-bench-inputs";
  fs::remove_all(dir);
  fs::create_directories(dir);
  for (const char* name : {"b.txt", "a.txt", "c.md"}) std::ofstream(dir / name) << "x";
  const auto all = resolve_inputs({dir.string()});
  CHECK(all == std::vector<std::string>{(dir / "a.txt").string(), (dir / "b.txt").string(), (dir / "c.md").string()});
  CHECK(resolve_inputs({(dir / "*.txt").string()}).size() == 2);
  CHECK(resolve_inputs({(dir / "*.zzz").string()}).size() == 1);
  fs::remove_all(dir);
}
