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

// Acceptance run: one PASS/FAIL line per primary criterion, exit status 0
// only when all of them pass.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "oracles.hpp"
#include "rankzip/coders/adaptive_huffman.hpp"
#include "rankzip/coders/arithmetic.hpp"
#include "rankzip/coders/huffman.hpp"
#include "rankzip/coders/lz77.hpp"
#include "rankzip/error.hpp"
#include "rankzip/metrics.hpp"
#include "rankzip/pipeline.hpp"
#include "test_util.hpp"

using namespace rankzip;
using coders::CoderId;

namespace {

// Tolerances and sizes, pinned.
constexpr int kRandomStrings = 1000;
constexpr std::size_t kMaxScalars = 10000;
constexpr int kArithmeticInputs = 100;
constexpr double kArithmeticSlackBits = 64.0;
constexpr std::size_t kHuffmanMaxSymbols = 6;
constexpr std::uint64_t kHuffmanMaxFrequency = 8;
constexpr int kFgkInputs = 200;
constexpr std::size_t kLzMaxLength = 12;
constexpr double kEntropyTolerance = 1e-12;
constexpr double kIdentityTolerance = 1e-9;
constexpr std::size_t kMinDirectionalBytes = 100 * 1000;
constexpr std::size_t kMinDecayBytes = 50 * 1000;
constexpr double kDecayFactor = 5.0;
constexpr int kMutations = 10000;

int failures = 0;

void report(bool ok, const std::string& name, const std::string& detail) {
  std::printf("%s  %-28s %s\n", ok ? "PASS" : "FAIL", name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

template <class F>
void parallel_for(std::size_t n, F&& body) {
  const unsigned threads = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), 16));
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next++) < n;) body(i);
    });
  for (auto& th : pool) th.join();
}

std::vector<PipelineSpec> round_trip_pipelines() {
  std::vector<PipelineSpec> out;
  for (CoderId id : coders::kAllCoders) {
    const std::string c(coders::to_string(id));
    out.push_back(PipelineSpec::parse("none+" + c));
    out.push_back(PipelineSpec::parse("builtin-k3+varint+" + c));
    out.push_back(PipelineSpec::parse("builtin-k3+ascii-dot+" + c));
  }
  return out;
}

void criterion_round_trip(const Vocabulary& bytes, const Vocabulary& english) {
  for (CoderId id : coders::kAllCoders)
    if (!coders::coder_available(id)) {
      report(false, "lossless round trip", "coder " + std::string(coders::to_string(id)) + " not built");
      return;
    }
  const auto pipelines = round_trip_pipelines();
  std::vector<Bytes> inputs;
  std::mt19937_64 rng(20240501);
  for (int i = 0; i < kRandomStrings; ++i) inputs.push_back(testing::random_utf8(rng, rng() % (kMaxScalars + 1)));
  for (const auto& name : testing::corpus_names()) inputs.push_back(testing::corpus(name));

  // Random strings alternate between the two vocabularies; the corpus texts
  // use the English one.
  auto english_for = [&](std::size_t i) { return i >= static_cast<std::size_t>(kRandomStrings) || i % 2 == 1; };

  std::atomic<std::size_t> checked{0}, bad{0};
  std::mutex m;
  std::string first_failure;
  parallel_for(inputs.size() * pipelines.size(), [&](std::size_t job) {
    const std::size_t p = job % pipelines.size();
    const std::size_t i = job / pipelines.size();
    const bool en = english_for(i);
    const Vocabulary& vocab = en ? english : bytes;
    bool ok = false;
    std::string why = "decoded text differs";
    try {
      ok = decompress_text(compress_text(inputs[i], pipelines[p], vocab), vocab) == inputs[i];
    } catch (const std::exception& e) {
      why = e.what();
    }
    ++checked;
    if (!ok && bad++ == 0) {
      std::lock_guard lock(m);
      first_failure = "input " + std::to_string(i) + " " + pipelines[p].name() + (en ? " english" : " bytes") + ": " + why;
    }
  });
  report(bad == 0, "lossless round trip",
         std::to_string(checked.load()) + " compress/decompress pairs (" + std::to_string(inputs.size()) + " inputs x " +
             std::to_string(pipelines.size()) + " pipelines), " + std::to_string(bad.load()) + " failures" +
             (first_failure.empty() ? "" : "; first: " + first_failure));
}

void criterion_coder_oracles() {
  // (a) static Huffman vs exhaustive optimum.
  std::size_t multisets = 0, huffman_bad = 0;
  for (std::size_t k = 1; k <= kHuffmanMaxSymbols; ++k)
    oracle::for_each_multiset(k, kHuffmanMaxFrequency, [&](const std::vector<std::uint64_t>& f) {
      ++multisets;
      if (oracle::code_cost(f, coders::huffman_code_lengths(f)) != oracle::optimal_prefix_cost(f)) ++huffman_bad;
    });

  // (b) arithmetic payload vs the model's code length.
  std::mt19937_64 rng(7);
  double worst = 0;
  for (int i = 0; i < kArithmeticInputs; ++i) {
    const Bytes x = testing::random_bytes(rng, rng() % 30000, 1 + rng() % 256);
    const double got =
        8.0 * static_cast<double>(coders::arithmetic_compress(x).size() - coders::arithmetic_header_size(x.size()));
    worst = std::max(worst, std::abs(got - oracle::adaptive_code_length(x)));
  }

  // (c) FGK encoder and decoder trees after every symbol.
  std::size_t symbols = 0, fgk_bad = 0;
  auto lockstep = [&](BytesView data) {
    coders::FgkTree enc, dec;
    for (char c : data) {
      Bytes buf;
      coders::BitWriter w(buf);
      enc.encode(static_cast<std::uint8_t>(c), w);
      w.flush();
      coders::BitReader r(buf);
      ++symbols;
      if (dec.decode(r) != static_cast<std::uint8_t>(c) || !(enc == dec) || !enc.sibling_property_holds()) {
        ++fgk_bad;
        return;
      }
    }
  };
  for (int i = 0; i < kFgkInputs; ++i) lockstep(testing::random_bytes(rng, rng() % 2000, 1 + rng() % 256));
  lockstep(testing::corpus("asyoulik.txt"));

  // (d) LZ77 parse vs brute force on every string over {a,b,c}.
  std::size_t strings = 0, lz_bad = 0;
  for (const auto& s : oracle::all_strings("abc", kLzMaxLength)) {
    ++strings;
    if (coders::lz77_parse(s) != oracle::lz77_brute_force(s, coders::kLz77DefaultWindow)) ++lz_bad;
  }

  char detail[400];
  std::snprintf(detail, sizeof detail,
                "(a) %zu multisets, %zu non-optimal; (b) worst |bits - sum(-log2 p)| = %.2f <= %.0f; (c) %zu symbols, "
                "%zu divergences; (d) %zu strings, %zu mismatches",
                multisets, huffman_bad, worst, kArithmeticSlackBits, symbols, fgk_bad, strings, lz_bad);
  report(huffman_bad == 0 && worst <= kArithmeticSlackBits && fgk_bad == 0 && lz_bad == 0, "coder oracles", detail);
}

void criterion_metrics() {
  std::mt19937_64 rng(3);
  double worst_entropy = 0, worst_identity = 0;
  for (int i = 0; i < 2000; ++i) {
    const Bytes x = testing::random_bytes(rng, 1 + rng() % 10000, 1 + rng() % 256);
    worst_entropy = std::max(worst_entropy, std::abs(shannon_entropy(x) - oracle::entropy_from_histogram(x)));
    const Bytes ascii = testing::random_bytes(rng, 1 + rng() % 10000, 128);
    const auto r = MetricsRecord::measure(ascii, 1 + rng() % 20000, 0);
    worst_identity = std::max(worst_identity, std::abs(r.ratio * r.bpc - 8.0));
  }
  const bool exact = shannon_entropy("aaaa") == 0.0 && shannon_entropy("ab") == 1.0;
  char detail[200];
  std::snprintf(detail, sizeof detail, "entropy error %.2e <= %.0e; aaaa/ab exact: %s; |ratio*bpc - 8| %.2e <= %.0e",
                worst_entropy, kEntropyTolerance, exact ? "yes" : "no", worst_identity, kIdentityTolerance);
  report(worst_entropy <= kEntropyTolerance && exact && worst_identity <= kIdentityTolerance, "metrics oracle", detail);
}

void criterion_directional(const Vocabulary& english) {
  const std::string name = "alice29.txt";
  const Bytes text = testing::corpus(name);
  auto ratio = [&](const char* pipeline) {
    const Bytes c = compress_text(text, PipelineSpec::parse(pipeline), english);
    if (decompress_text(c, english) != text) throw Error(std::string("round trip failed for ") + pipeline);
    return compression_ratio(text.size(), c.size());
  };
  const double none_deflate = ratio("none+deflate");
  const double none_brotli = ratio("none+brotli");
  const double rank_deflate = ratio("builtin-k3+varint+deflate");
  const double rank_brotli = ratio("builtin-k3+varint+brotli");
  char detail[300];
  std::snprintf(detail, sizeof detail,
                "%s (%zu bytes, lcet10-512 vocab): rank+deflate %.3f > deflate %.3f; rank+brotli %.3f > rank+deflate "
                "%.3f; brotli %.3f > deflate %.3f",
                name.c_str(), text.size(), rank_deflate, none_deflate, rank_brotli, rank_deflate, none_brotli, none_deflate);
  report(text.size() >= kMinDirectionalBytes && rank_deflate > none_deflate && rank_brotli > rank_deflate &&
             none_brotli > none_deflate,
         "directional claim", detail);
}

void criterion_rank_decay(const Vocabulary& english) {
  const Bytes text = testing::corpus("plrabn12.txt");
  BuiltinModel model(english.size(), 3);
  const RankStream s = encode_ranks(text, model, english);
  std::uint64_t f0 = 0, f1 = 0, f10 = 0;
  for (auto r : s.ranks) {
    f0 += r == 0;
    f1 += r == 1;
    f10 += r == 10;
  }
  char detail[200];
  std::snprintf(detail, sizeof detail, "plrabn12.txt (%zu bytes, %zu tokens): f0 %llu > f1 %llu; f0 > %.0f x f10 (%llu)",
                text.size(), s.ranks.size(), static_cast<unsigned long long>(f0), static_cast<unsigned long long>(f1),
                kDecayFactor, static_cast<unsigned long long>(f10));
  report(text.size() >= kMinDecayBytes && f0 > f1 && static_cast<double>(f0) > kDecayFactor * static_cast<double>(f10),
         "rank decay", detail);
}

void criterion_container_fuzz(const Vocabulary& english) {
  const Bytes text = testing::corpus("asyoulik.txt").substr(0, 4000);
  std::vector<Bytes> containers;
  for (const char* p : {"builtin-k3+varint+deflate", "builtin-k3+ascii-dot+arithmetic", "none+huffman",
                        "builtin-k3+varint+lz77", "none+brotli", "builtin-k3+varint+adaptive-huffman"})
    containers.push_back(compress_text(text, PipelineSpec::parse(p), english));

  std::mt19937_64 rng(99);
  int silent = 0, detected = 0, other = 0;
  for (int i = 0; i < kMutations; ++i) {
    Bytes c = containers[static_cast<std::size_t>(i) % containers.size()];
    const std::size_t at = rng() % c.size();
    c[at] = static_cast<char>(static_cast<std::uint8_t>(c[at]) ^ (1 + rng() % 255));
    try {
      decompress_text(c, english);
      ++silent;
    } catch (const CorruptionError&) {
      ++detected;
    } catch (const std::exception&) {
      ++other;
    }
  }
  report(silent == 0 && other == 0, "container robustness",
         std::to_string(kMutations) + " single-byte corruptions: " + std::to_string(detected) + " detected, " +
             std::to_string(silent) + " silent, " + std::to_string(other) + " untyped");
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  const Vocabulary bytes = Vocabulary::byte_level();
  const Vocabulary english = Vocabulary::load(testing::english_vocab_path());
  auto guarded = [](const char* name, auto&& fn) {
    try {
      fn();
    } catch (const std::exception& e) {
      report(false, name, std::string("threw: ") + e.what());
    }
  };
  guarded("lossless round trip", [&] { criterion_round_trip(bytes, english); });
  guarded("coder oracles", [&] { criterion_coder_oracles(); });
  guarded("metrics oracle", [&] { criterion_metrics(); });
  guarded("directional claim", [&] { criterion_directional(english); });
  guarded("rank decay", [&] { criterion_rank_decay(english); });
  guarded("container robustness", [&] { criterion_container_fuzz(english); });
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  std::printf("%s  %d of 6 criteria failed (%.1f s)\n", failures ? "FAIL" : "PASS", failures, elapsed.count());
  return failures ? 1 : 0;
}
