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

#include "rankzip/bench.hpp"

#include <glob.h>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <memory>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "rankzip/error.hpp"

namespace rankzip::bench {
namespace fs = std::filesystem;
namespace {

Bytes read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  if (f.bad()) throw Error("cannot read " + path);
  return ss.str();
}

double median(std::vector<double> v) {
  if (v.empty()) return 0;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2;
}

std::string fmt(double v, int precision) {
  std::ostringstream ss;
  ss << std::fixed << std::setprecision(precision) << v;
  return ss.str();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string md_cell(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += '\\';
    out += c;
  }
  return out;
}

const char* status_name(RowStatus s) { return s == RowStatus::ok ? "ok" : "FAILED"; }

struct Task {
  std::size_t input = 0;
  std::size_t pipeline = 0;
};

}  // namespace

bool Report::any_failed() const {
  return std::any_of(rows.begin(), rows.end(), [](const ReportRow& r) { return r.status == RowStatus::failed; });
}

ReportFormat parse_report_format(std::string_view name) {
  if (name == "csv") return ReportFormat::csv;
  if (name == "markdown" || name == "md") return ReportFormat::markdown;
  if (name == "json") return ReportFormat::json;
  throw UsageError("unknown report format '" + std::string(name) + "' (expected csv, markdown or json)");
}

std::vector<std::string> resolve_inputs(const std::vector<std::string>& inputs) {
  std::vector<std::string> out;
  for (const auto& in : inputs) {
    std::error_code ec;
    if (fs::is_directory(in, ec)) {
      std::vector<std::string> files;
      for (const auto& e : fs::directory_iterator(in, ec))
        if (e.is_regular_file()) files.push_back(e.path().string());
      std::sort(files.begin(), files.end());
      out.insert(out.end(), files.begin(), files.end());
    } else if (in.find_first_of("*?[") != std::string::npos) {
      glob_t g{};
      if (::glob(in.c_str(), 0, nullptr, &g) == 0) {
        for (std::size_t i = 0; i < g.gl_pathc; ++i) out.emplace_back(g.gl_pathv[i]);
      } else {
        out.push_back(in);
      }
      ::globfree(&g);
    } else {
      out.push_back(in);
    }
  }
  return out;
}

Bytes truncate_scalars(BytesView text, std::uint64_t chars) {
  if (chars == 0) return Bytes(text);
  std::uint64_t seen = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if ((static_cast<std::uint8_t>(text[i]) & 0xC0) == 0x80) continue;
    if (seen == chars) return Bytes(text.substr(0, i));
    ++seen;
  }
  return Bytes(text);
}

Bytes strip_gutenberg(BytesView text) {
  std::size_t begin = 0, end = text.size();
  if (auto s = text.find("*** START OF"); s != BytesView::npos) {
    const auto nl = text.find('\n', s);
    begin = nl == BytesView::npos ? text.size() : nl + 1;
  }
  if (auto e = text.find("*** END OF", begin); e != BytesView::npos) {
    const auto line = text.rfind('\n', e);
    end = line == BytesView::npos || line < begin ? begin : line + 1;
  }
  return Bytes(text.substr(begin, end - begin));
}

Report run_plan(const BenchPlan& plan, const Vocabulary& vocab) {
  if (plan.repetitions == 0) throw UsageError("repetitions must be at least 1");
  for (const auto& p : plan.pipelines) p.validate();

  Report report;
  report.truncate_chars = plan.truncate_chars;
  report.notes.push_back("entropy: Shannon entropy of the byte histogram of each input");
  report.notes.push_back("bpc: a character is one byte; bits_per_scalar divides by Unicode scalar values");
  report.notes.push_back("elapsed: median of " + std::to_string(plan.repetitions) +
                         " sequential compression run(s); external predictor handshakes happen before the clock starts");

  const auto paths = resolve_inputs(plan.inputs);
  std::vector<std::pair<std::string, Bytes>> texts;
  for (const auto& path : paths) {
    try {
      Bytes text = read_file(path);
      if (plan.strip_gutenberg_header) text = strip_gutenberg(text);
      texts.emplace_back(path, truncate_scalars(text, plan.truncate_chars));
    } catch (const Error& e) {
      report.input_errors.push_back({path, e.what()});
    }
  }

  std::vector<Task> tasks;
  for (std::size_t i = 0; i < texts.size(); ++i)
    for (std::size_t p = 0; p < plan.pipelines.size(); ++p) tasks.push_back({i, p});
  std::vector<ReportRow> rows(tasks.size());

  // Compress and verify; may run on several threads.
  auto verify = [&](std::size_t t) {
    const auto& [path, text] = texts[tasks[t].input];
    const PipelineSpec& spec = plan.pipelines[tasks[t].pipeline];
    ReportRow& row = rows[t];
    row.input = path;
    row.pipeline = spec.name();
    try {
      const Bytes container = compress_text(text, spec, vocab);
      DecompressOptions opts;
      opts.external_address = spec.predictor.address;
      if (decompress_text(container, vocab, opts) != text) throw CorruptionError("decoded text differs");
      row.metrics = MetricsRecord::measure(text, container.size(), 0);
    } catch (const std::exception& e) {
      row.status = RowStatus::failed;
      row.error = e.what();
    }
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(plan.jobs, static_cast<unsigned>(tasks.size())));
  if (jobs <= 1) {
    for (std::size_t t = 0; t < tasks.size(); ++t) verify(t);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j)
      pool.emplace_back([&] {
        for (std::size_t t; (t = next++) < tasks.size();) verify(t);
      });
    for (auto& th : pool) th.join();
  }

  // Timing, one run at a time.
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    ReportRow& row = rows[t];
    if (row.status != RowStatus::ok) continue;
    const Bytes& text = texts[tasks[t].input].second;
    const PipelineSpec& spec = plan.pipelines[tasks[t].pipeline];
    try {
      std::unique_ptr<Predictor> predictor;
      if (spec.predictor.kind != PredictorKind::none) predictor = make_predictor(spec.predictor, vocab);
      std::vector<double> times;
      for (unsigned r = 0; r < plan.repetitions; ++r)
        times.push_back(timed([&] { return compress_text(text, spec, vocab, predictor.get()); }).second);
      row.metrics.elapsed = median(times);
    } catch (const std::exception& e) {
      row.status = RowStatus::failed;
      row.error = e.what();
    }
  }
  report.rows = std::move(rows);

  for (const auto& spec : plan.pipelines) {
    Aggregate a;
    a.pipeline = spec.name();
    for (const auto& r : report.rows) {
      if (r.pipeline != a.pipeline || r.status != RowStatus::ok) continue;
      ++a.files;
      a.ratio += r.metrics.ratio;
      a.bpc += r.metrics.bpc;
      a.entropy += r.metrics.entropy;
      a.elapsed += r.metrics.elapsed;
    }
    if (a.files) {
      const auto n = static_cast<double>(a.files);
      a.ratio /= n;
      a.bpc /= n;
      a.entropy /= n;
      a.elapsed /= n;
    }
    report.aggregates.push_back(a);
  }
  return report;
}

std::string emit_report(const Report& report, ReportFormat format) {
  std::ostringstream out;
  switch (format) {
    case ReportFormat::csv: {
      out << "input,pipeline,uncompressed,compressed,ratio,bpc,entropy,elapsed,bits_per_scalar,status\n";
      for (const auto& r : report.rows) {
        const auto& m = r.metrics;
        out << csv_field(r.input) << ',' << csv_field(r.pipeline) << ',';
        if (r.status == RowStatus::ok) {
          out << m.uncompressed_size << ',' << m.compressed_size << ',' << fmt(m.ratio, 6) << ',' << fmt(m.bpc, 6)
              << ',' << fmt(m.entropy, 6) << ',' << fmt(m.elapsed, 6) << ',' << fmt(m.bits_per_scalar, 6);
        } else {
          out << ",,,,,,";
        }
        out << ',' << status_name(r.status) << '\n';
      }
      break;
    }
    case ReportFormat::markdown: {
      out << "| input | pipeline | uncompressed | compressed | ratio | bpc | entropy | elapsed (s) |\n";
      out << "|---|---|---:|---:|---:|---:|---:|---:|\n";
      for (const auto& r : report.rows) {
        const auto& m = r.metrics;
        out << "| " << md_cell(r.input) << " | " << md_cell(r.pipeline) << " | ";
        if (r.status == RowStatus::ok)
          out << m.uncompressed_size << " | " << m.compressed_size << " | " << fmt(m.ratio, 2) << " | "
              << fmt(m.bpc, 2) << " | " << fmt(m.entropy, 2) << " | " << fmt(m.elapsed, 4) << " |\n";
        else
          out << "FAILED | | | | | |\n";
      }

      // Per-dataset comparison against the first raw-coder pipeline.
      const Aggregate* base = nullptr;
      for (const auto& a : report.aggregates)
        if (a.pipeline.starts_with("none+")) {
          base = &a;
          break;
        }
      std::vector<const Aggregate*> others;
      for (const auto& a : report.aggregates)
        if (&a != base) others.push_back(&a);
      if (base && !others.empty()) {
        auto find = [&](const std::string& input, const std::string& pipeline) -> const ReportRow* {
          for (const auto& r : report.rows)
            if (r.input == input && r.pipeline == pipeline && r.status == RowStatus::ok) return &r;
          return nullptr;
        };
        std::vector<std::string> inputs;
        for (const auto& r : report.rows)
          if (std::find(inputs.begin(), inputs.end(), r.input) == inputs.end()) inputs.push_back(r.input);

        out << "\n| dataset | " << md_cell(base->pipeline) << " ratio";
        for (auto* a : others) out << " | " << md_cell(a->pipeline) << " ratio | " << md_cell(a->pipeline) << " bpc";
        out << " |\n|---|---:";
        for (std::size_t i = 0; i < others.size(); ++i) out << "|---:|---:";
        out << "|\n";
        auto cell = [&](const ReportRow* r, bool bpc) { return r ? fmt(bpc ? r->metrics.bpc : r->metrics.ratio, 2) : std::string("-"); };
        for (const auto& in : inputs) {
          out << "| " << md_cell(fs::path(in).filename().string()) << " | " << cell(find(in, base->pipeline), false);
          for (auto* a : others) out << " | " << cell(find(in, a->pipeline), false) << " | " << cell(find(in, a->pipeline), true);
          out << " |\n";
        }
        out << "| average | " << fmt(base->ratio, 2);
        for (auto* a : others) out << " | " << fmt(a->ratio, 2) << " | " << fmt(a->bpc, 2);
        out << " |\n";
      }

      out << "\n| pipeline | files | mean ratio | mean bpc | mean entropy | mean elapsed (s) |\n";
      out << "|---|---:|---:|---:|---:|---:|\n";
      for (const auto& a : report.aggregates)
        out << "| " << md_cell(a.pipeline) << " | " << a.files << " | " << fmt(a.ratio, 2) << " | " << fmt(a.bpc, 2)
            << " | " << fmt(a.entropy, 2) << " | " << fmt(a.elapsed, 4) << " |\n";

      if (report.truncate_chars) out << "\nInputs truncated to the first " << report.truncate_chars << " characters.\n";
      for (const auto& n : report.notes) out << "\n- " << n;
      for (const auto& e : report.input_errors) out << "\n- error: " << e.input << ": " << e.message;
      out << '\n';
      break;
    }
    case ReportFormat::json: {
      nlohmann::ordered_json j;
      j["schema"] = "rankzip-bench/1";
      j["truncate_chars"] = report.truncate_chars;
      j["rows"] = nlohmann::ordered_json::array();
      for (const auto& r : report.rows) {
        const auto& m = r.metrics;
        nlohmann::ordered_json row;
        row["input"] = r.input;
        row["pipeline"] = r.pipeline;
        if (r.status == RowStatus::ok) {
          row["uncompressed"] = m.uncompressed_size;
          row["compressed"] = m.compressed_size;
          row["ratio"] = m.ratio;
          row["bpc"] = m.bpc;
          row["entropy"] = m.entropy;
          row["elapsed"] = m.elapsed;
          row["bits_per_scalar"] = m.bits_per_scalar;
          row["chars"] = m.char_count;
          row["scalars"] = m.scalar_count;
        }
        row["status"] = status_name(r.status);
        if (!r.error.empty()) row["error"] = r.error;
        j["rows"].push_back(row);
      }
      j["aggregates"] = nlohmann::ordered_json::array();
      for (const auto& a : report.aggregates)
        j["aggregates"].push_back(
            {{"pipeline", a.pipeline}, {"files", a.files}, {"ratio", a.ratio}, {"bpc", a.bpc}, {"entropy", a.entropy}, {"elapsed", a.elapsed}});
      j["errors"] = nlohmann::ordered_json::array();
      for (const auto& e : report.input_errors) j["errors"].push_back({{"input", e.input}, {"message", e.message}});
      j["notes"] = report.notes;
      out << j.dump(2) << '\n';
      break;
    }
  }
  return out.str();
}

}  // namespace rankzip::bench
