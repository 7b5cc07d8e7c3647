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

// rankzip command-line tool: compress, decompress, train-bpe, bench, inspect.

#include <unistd.h>

#include <cstdio>
#include <iomanip>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "rankzip/bench.hpp"
#include "rankzip/container.hpp"
#include "rankzip/error.hpp"
#include "rankzip/metrics.hpp"
#include "rankzip/pipeline.hpp"

namespace fs = std::filesystem;
using namespace rankzip;

namespace {

enum Exit : int {
  kOk = 0,
  kVerifyFailed = 1,
  kUsage = 2,
  kTransport = 3,
  kMismatch = 4,
  kCorrupt = 5,
};

Bytes read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  if (f.bad()) throw Error("cannot read " + path);
  return ss.str();
}

// Writes next to the destination and renames into place.
void write_output(const std::string& path, BytesView data) {
  if (path == "-") {
    std::cout.write(data.data(), static_cast<std::streamsize>(data.size()));
    std::cout.flush();
    if (!std::cout) throw Error("cannot write to standard output");
    return;
  }
  const fs::path dest(path);
  fs::path tmp = dest;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot create " + tmp.string());
    f.write(data.data(), static_cast<std::streamsize>(data.size()));
    f.flush();
    if (!f) {
      f.close();
      std::error_code ec;
      fs::remove(tmp, ec);
      throw Error("cannot write " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, dest, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error("cannot rename into " + dest.string());
  }
}

Vocabulary load_vocab(const std::string& path) { return path.empty() ? Vocabulary::byte_level() : Vocabulary::load(path); }

const char* kind_name(PredictorKind k) {
  switch (k) {
    case PredictorKind::none: return "none";
    case PredictorKind::builtin: return "builtin";
    case PredictorKind::external: return "external";
  }
  return "?";
}

struct CompressArgs {
  std::string input, output, predictor = "builtin-k3", coder = "deflate", serialization = "varint", vocab, mode = "individual";
  std::uint32_t window = kDefaultWindow, batch_width = 4;
  int level = -1, quality = -1;
  std::uint32_t lz77_window = 0;
  bool quiet = false;
};

int cmd_compress(const CompressArgs& a, const CLI::App& sub) {
  PipelineSpec spec;
  spec.predictor = PredictorOptions::parse(a.predictor);
  spec.predictor.window = a.window;
  const bool ser_given = sub.get_option("--serialization")->count() > 0;
  if (spec.predictor.kind == PredictorKind::none) {
    if (ser_given) throw UsageError("--serialization cannot be combined with --predictor none");
    if (sub.get_option("--mode")->count() || sub.get_option("--batch-width")->count())
      throw UsageError("--mode/--batch-width need a predictor");
    spec.serialization = RankSerialization::none;
  } else {
    spec.serialization = parse_serialization(a.serialization);
    if (spec.serialization == RankSerialization::none) throw UsageError("--serialization must be varint or ascii-dot");
    if (a.mode == "batch") {
      spec.predictor.mode = InferenceMode::batch;
      spec.predictor.batch_width = a.batch_width;
      if (a.batch_width == 0) throw UsageError("--batch-width must be positive");
    } else if (a.mode != "individual") {
      throw UsageError("--mode must be individual or batch");
    } else if (sub.get_option("--batch-width")->count()) {
      throw UsageError("--batch-width needs --mode batch");
    }
  }
  spec.coder = coders::CoderSpec::with_defaults(coders::parse_coder(a.coder));
  auto param_flag = [&](const char* flag, coders::CoderId owner, std::int64_t value) {
    if (!sub.get_option(flag)->count()) return;
    if (spec.coder.id != owner)
      throw UsageError(std::string(flag) + " applies to --coder " + std::string(coders::to_string(owner)) + " only");
    if (value < 0) throw RangeError(std::string(flag) + " must not be negative");
    spec.coder.param = static_cast<std::uint32_t>(value);
  };
  param_flag("--level", coders::CoderId::deflate, a.level);
  param_flag("--quality", coders::CoderId::brotli, a.quality);
  param_flag("--lz77-window", coders::CoderId::lz77, a.lz77_window);
  spec.validate();

  const Vocabulary vocab = load_vocab(a.vocab);
  const Bytes text = read_input(a.input);
  std::unique_ptr<Predictor> predictor;
  if (spec.predictor.kind != PredictorKind::none) predictor = make_predictor(spec.predictor, vocab);
  auto [container, elapsed] = timed([&] { return compress_text(text, spec, vocab, predictor.get()); });
  const std::string out = a.output.empty() ? (a.input == "-" ? "-" : a.input + ".azip") : a.output;
  write_output(out, container);

  if (!a.quiet) {
    std::cerr << "pipeline      " << spec.name() << '\n'
              << "uncompressed  " << text.size() << " bytes\n"
              << "compressed    " << container.size() << " bytes\n";
    if (!text.empty()) {
      const auto m = MetricsRecord::measure(text, container.size(), elapsed);
      std::cerr << "ratio         " << m.ratio << '\n'
                << "bpc           " << m.bpc << '\n'
                << "entropy       " << m.entropy << " bits/byte\n";
    }
    std::cerr << "elapsed       " << elapsed << " s\n";
  }
  return kOk;
}

int cmd_decompress(const std::string& input, const std::string& output, const std::string& vocab_path,
                   const std::string& predictor) {
  const Bytes data = read_input(input);
  const Container c = unpack(data);
  DecompressOptions opts;
  if (!predictor.empty()) {
    const auto o = PredictorOptions::parse(predictor);
    if (o.kind != PredictorKind::external) throw UsageError("decompress --predictor takes external:<address> only");
    opts.external_address = o.address;
  }
  Vocabulary vocab = Vocabulary::byte_level();
  if (!vocab_path.empty()) {
    vocab = Vocabulary::load(vocab_path);
  } else if (c.meta.predictor.kind != PredictorKind::none && c.meta.vocab_fingerprint != vocab.fingerprint()) {
    throw MismatchError("container needs vocabulary " + to_hex(c.meta.vocab_fingerprint) + "; pass it with --vocab",
                        c.meta.predictor.id);
  }
  const Bytes text = decompress_text(data, vocab, opts);
  std::string out = output;
  if (out.empty()) {
    if (input == "-") out = "-";
    else if (input.size() > 5 && input.ends_with(".azip")) out = input.substr(0, input.size() - 5);
    else out = input + ".out";
  }
  write_output(out, text);
  return kOk;
}

int cmd_inspect(const std::string& input) {
  const Container c = unpack(read_input(input));
  const auto& m = c.meta;
  std::cout << "format_version      " << int{kContainerVersion} << '\n'
            << "predictor_kind      " << kind_name(m.predictor.kind) << '\n'
            << "predictor_id        " << m.predictor.id << '\n'
            << "predictor_order     " << int{m.predictor.order} << '\n'
            << "predictor_window    " << m.predictor.window << '\n'
            << "inference_mode      " << to_string(m.predictor.mode) << '\n'
            << "batch_width         " << m.predictor.batch_width << '\n'
            << "predictor_fp        " << to_hex(m.predictor_fingerprint) << '\n'
            << "vocab_fp            " << to_hex(m.vocab_fingerprint) << '\n'
            << "rank_serialization  " << to_string(m.serialization) << '\n'
            << "coder               " << coders::to_string(m.coder.id) << '\n'
            << "coder_param         " << m.coder.param << '\n'
            << "token_count         " << m.token_count << '\n'
            << "original_length     " << m.original_length << '\n'
            << "text_crc32          " << std::hex << std::setw(8) << std::setfill('0') << m.text_crc32 << std::dec << '\n'
            << "payload_bytes       " << c.payload.size() << '\n'
            << "container_bytes     " << (c.payload.size() + kContainerFixedOverhead + m.predictor.id.size()) << '\n';
  return kOk;
}

int cmd_train(const std::vector<std::string>& inputs, std::size_t size, const std::string& output) {
  Bytes corpus;
  for (const auto& in : inputs) corpus += read_input(in);
  const Vocabulary v = train_bpe(corpus, size);
  v.save(output);
  std::cerr << "vocabulary    " << v.size() << " entries, " << v.merges().size() << " merges\n"
            << "fingerprint   " << to_hex(v.fingerprint()) << '\n';
  return kOk;
}

struct BenchArgs {
  std::vector<std::string> inputs, pipelines;
  std::uint64_t truncate = bench::kDefaultTruncateChars;
  unsigned repetitions = 1, jobs = 1;
  std::string format = "markdown", output, vocab;
  bool strip = false;
};

int cmd_bench(const BenchArgs& a) {
  const auto format = bench::parse_report_format(a.format);
  bench::BenchPlan plan;
  plan.inputs = a.inputs;
  plan.truncate_chars = a.truncate;
  plan.repetitions = a.repetitions;
  plan.jobs = a.jobs;
  plan.strip_gutenberg_header = a.strip;
  const std::vector<std::string> names =
      a.pipelines.empty() ? std::vector<std::string>{"none+deflate", "builtin-k3+varint+deflate"} : a.pipelines;
  for (const auto& p : names) plan.pipelines.push_back(PipelineSpec::parse(p));
  for (const auto& p : plan.pipelines) p.validate();
  const Vocabulary vocab = load_vocab(a.vocab);

  const auto report = bench::run_plan(plan, vocab);
  const std::string text = bench::emit_report(report, format);
  write_output(a.output.empty() ? "-" : a.output, text);
  for (const auto& e : report.input_errors) std::cerr << "rankzip bench: " << e.input << ": " << e.message << '\n';
  for (const auto& r : report.rows)
    if (r.status == bench::RowStatus::failed)
      std::cerr << "rankzip bench: FAILED " << r.input << " [" << r.pipeline << "]: " << r.error << '\n';
  return report.any_failed() ? kVerifyFailed : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rankzip: predictive rank-transform text compression"};
  app.require_subcommand(1);

  CompressArgs ca;
  auto* compress = app.add_subcommand("compress", "Compress a file into an .azip container");
  compress->add_option("input", ca.input, "Input file ('-' for stdin)")->required();
  compress->add_option("-o,--output", ca.output, "Output path (default <input>.azip)");
  compress->add_option("--predictor", ca.predictor, "none | builtin-k<N> | external:<address>")->capture_default_str();
  compress->add_option("--coder", ca.coder, "huffman | adaptive-huffman | arithmetic | lz77 | deflate | brotli")
      ->capture_default_str();
  compress->add_option("--serialization", ca.serialization, "varint | ascii-dot")->capture_default_str();
  compress->add_option("--window", ca.window, "Predictor context window in tokens")->capture_default_str();
  compress->add_option("--vocab", ca.vocab, "BPE vocabulary file (default: byte-level)");
  compress->add_option("--mode", ca.mode, "individual | batch")->capture_default_str();
  compress->add_option("--batch-width", ca.batch_width, "Tokens ranked per frozen snapshot in batch mode");
  compress->add_option("--level", ca.level, "DEFLATE level 0..9 (default 9)");
  compress->add_option("--quality", ca.quality, "Brotli quality 0..11 (default 11)");
  compress->add_option("--lz77-window", ca.lz77_window, "LZ77 window 1..65536 (default 32768)");
  compress->add_flag("-q,--quiet", ca.quiet, "No summary on stderr");

  std::string d_input, d_output, d_vocab, d_predictor;
  auto* decompress = app.add_subcommand("decompress", "Restore the original file from an .azip container");
  decompress->add_option("input", d_input, "Container ('-' for stdin)")->required();
  decompress->add_option("-o,--output", d_output, "Output path (default: input without .azip)");
  decompress->add_option("--vocab", d_vocab, "Vocabulary used at compression time");
  decompress->add_option("--predictor", d_predictor, "external:<address> for containers made with an external predictor");

  std::vector<std::string> t_inputs;
  std::size_t t_size = 512;
  std::string t_output;
  auto* train = app.add_subcommand("train-bpe", "Train a byte-pair-encoding vocabulary");
  train->add_option("corpus", t_inputs, "Training text files")->required();
  train->add_option("--vocab-size", t_size, "Target vocabulary size (>= 257)")->capture_default_str();
  train->add_option("-o,--output", t_output, "Vocabulary file to write")->required();

  BenchArgs ba;
  auto* bench = app.add_subcommand("bench", "Run pipelines over a corpus and report metrics");
  bench->add_option("inputs", ba.inputs, "Files, directories or glob patterns");
  bench->add_option("-p,--pipeline", ba.pipelines, "Pipeline, e.g. none+deflate or builtin-k3+varint+brotli (repeatable)")
      ->allow_extra_args(false);
  bench->add_option("--truncate", ba.truncate, "Characters kept from each file; 0 keeps all")->capture_default_str();
  bench->add_option("--repetitions", ba.repetitions, "Timed runs per row; elapsed is their median")->capture_default_str();
  bench->add_option("--jobs", ba.jobs, "Files verified in parallel")->capture_default_str();
  bench->add_option("--format", ba.format, "csv | markdown | json")->capture_default_str();
  bench->add_option("-o,--output", ba.output, "Report path (default stdout)");
  bench->add_option("--vocab", ba.vocab, "BPE vocabulary file (default: byte-level)");
  bench->add_flag("--strip-gutenberg-header", ba.strip, "Keep only the text between the *** START/END *** lines");

  std::string i_input;
  auto* inspect = app.add_subcommand("inspect", "Print container metadata without decoding");
  inspect->add_option("input", i_input, "Container")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*compress) return cmd_compress(ca, *compress);
    if (*decompress) return cmd_decompress(d_input, d_output, d_vocab, d_predictor);
    if (*train) return cmd_train(t_inputs, t_size, t_output);
    if (*bench) return cmd_bench(ba);
    if (*inspect) return cmd_inspect(i_input);
  } catch (const TransportError& e) {
    std::cerr << "rankzip: predictor unreachable: " << e.what() << '\n';
    return kTransport;
  } catch (const MismatchError& e) {
    std::cerr << "rankzip: " << e.what() << " (recorded predictor: " << e.recorded_id() << ")\n";
    return kMismatch;
  } catch (const CorruptionError& e) {
    std::cerr << "rankzip: corrupt input: " << e.what() << '\n';
    return kCorrupt;
  } catch (const std::exception& e) {
    std::cerr << "rankzip: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
