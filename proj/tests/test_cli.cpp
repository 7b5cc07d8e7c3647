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

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "rankzip/hashing.hpp"
#include "rankzip/protocol.hpp"
#include "rankzip/tokenizer.hpp"
#include "test_util.hpp"

using namespace rankzip;
namespace fs = std::filesystem;

namespace {

struct Scratch {
  fs::path dir;
  Scratch() : dir(fs::temp_directory_path() / ("rankzip-cli-" + std::to_string(::getpid()))) {
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }
  std::string operator/(const std::string& name) const { return (dir / name).string(); }
};

int run(const std::string& args, const std::string& log = "/dev/null") {
  const std::string cmd = std::string(RANKZIP_CLI) + " " + args + " >" + log + " 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

void write(const std::string& path, BytesView data) {
  std::ofstream(path, std::ios::binary).write(data.data(), static_cast<std::streamsize>(data.size()));
}

std::string corpus_path(const std::string& name) { return std::string(RANKZIP_CORPUS_DIR) + "/" + name; }

}  // namespace

TEST_CASE("compress and decompress round trip through the binary") {
  Scratch s;
  const std::string vocab = testing::english_vocab_path();
  const Bytes text = testing::corpus("asyoulik.txt");
  write(s / "in.txt", text);
  for (const char* flags : {"", "--coder brotli", "--coder arithmetic --serialization ascii-dot",
                            "--predictor none --coder huffman", "--coder lz77 --lz77-window 4096",
                            "--coder deflate --level 1", "--mode batch --batch-width 8", "--predictor builtin-k1 --window 10"}) {
    INFO(flags);
    REQUIRE(run("compress -q " + std::string(flags) + " --vocab " + vocab + " " + (s / "in.txt") + " -o " + (s / "x.azip")) == 0);
    REQUIRE(run("decompress --vocab " + vocab + " " + (s / "x.azip") + " -o " + (s / "out.txt")) == 0);
    REQUIRE(testing::read_file(s / "out.txt") == text);
  }
  // Default output names.
  REQUIRE(run("compress " + (s / "in.txt")) == 0);
  fs::remove(s / "in.txt");
  REQUIRE(run("decompress " + (s / "in.txt.azip")) == 0);
  CHECK(testing::read_file(s / "in.txt") == text);
}

TEST_CASE("metrics summary on stderr") {
  Scratch s;
  REQUIRE(run("compress " + corpus_path("alice29.txt") + " -o " + (s / "a.azip"), s / "log") == 0);
  const Bytes log = testing::read_file(s / "log");
  for (const char* key : {"pipeline", "uncompressed", "compressed", "ratio", "bpc", "entropy", "elapsed"})
    CHECK(log.find(key) != Bytes::npos);
}

TEST_CASE("brotli beats deflate through the CLI") {
  Scratch s;
  REQUIRE(run("compress -q --coder deflate " + corpus_path("alice29.txt") + " -o " + (s / "d")) == 0);
  REQUIRE(run("compress -q --coder brotli " + corpus_path("alice29.txt") + " -o " + (s / "b")) == 0);
  CHECK(fs::file_size(s / "b") < fs::file_size(s / "d"));
}

TEST_CASE("usage errors exit 2 before any output") {
  Scratch s;
  const std::string in = corpus_path("alice29.txt");
  CHECK(run("") == 2);
  CHECK(run("frobnicate") == 2);
  CHECK(run("compress --predictor none --serialization varint " + in + " -o " + (s / "x")) == 2);
  CHECK(run("compress --coder zstd " + in + " -o " + (s / "x")) == 2);
  CHECK(run("compress --coder brotli --level 3 " + in + " -o " + (s / "x")) == 2);
  CHECK(run("compress --coder deflate --level 12 " + in + " -o " + (s / "x")) == 2);
  CHECK(run("compress --predictor builtin-k99 " + in + " -o " + (s / "x")) == 2);
  CHECK(run("compress --batch-width 4 " + in + " -o " + (s / "x")) == 2);
  CHECK(run("compress " + (s / "missing.txt") + " -o " + (s / "x")) == 2);
  CHECK(run("bench --format xml " + in) == 2);
  CHECK_FALSE(fs::exists(s / "x"));
}

TEST_CASE("corruption exits 5 and leaves no partial output") {
  Scratch s;
  REQUIRE(run("compress -q " + corpus_path("alice29.txt") + " -o " + (s / "a.azip")) == 0);
  Bytes c = testing::read_file(s / "a.azip");
  c[c.size() / 2] ^= 0x10;
  write(s / "bad.azip", c);
  write(s / "out.txt", "previous contents");
  CHECK(run("decompress " + (s / "bad.azip") + " -o " + (s / "out.txt")) == 5);
  CHECK(testing::read_file(s / "out.txt") == "previous contents");
  write(s / "trunc.azip", c.substr(0, 60));
  CHECK(run("decompress " + (s / "trunc.azip")) == 5);
  CHECK(run("inspect " + (s / "trunc.azip")) == 5);
  write(s / "notazip", "hello world");
  CHECK(run("inspect " + (s / "notazip")) == 5);
  std::size_t entries = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(s.dir)) ++entries;
  CHECK(entries == 5);  // no stray temp files
}

TEST_CASE("inspect prints every field and changes nothing") {
  Scratch s;
  const std::string vocab = testing::english_vocab_path();
  REQUIRE(run("compress -q --vocab " + vocab + " --coder lz77 --mode batch --batch-width 5 " + corpus_path("alice29.txt") +
              " -o " + (s / "a.azip")) == 0);
  const auto before = fs::last_write_time(s / "a.azip");
  const Bytes bytes_before = testing::read_file(s / "a.azip");
  REQUIRE(run("inspect " + (s / "a.azip"), s / "info") == 0);
  CHECK(fs::last_write_time(s / "a.azip") == before);
  CHECK(testing::read_file(s / "a.azip") == bytes_before);
  const Bytes info = testing::read_file(s / "info");
  const Vocabulary v = Vocabulary::load(vocab);
  for (const std::string& line : std::vector<std::string>
       {"format_version      1", "predictor_kind      builtin", "predictor_id        builtin-k3", "predictor_order     3",
        "predictor_window    100", "inference_mode      batch", "batch_width         5",
        "vocab_fp            " + to_hex(v.fingerprint()), "rank_serialization  varint", "coder               lz77",
        "coder_param         32768", "original_length     152089",
        "container_bytes     " + std::to_string(bytes_before.size())})
    CHECK(info.find(line + "\n") != Bytes::npos);
  for (const char* key : {"predictor_fp", "token_count", "text_crc32", "payload_bytes"}) CHECK(info.find(key) != Bytes::npos);
}

TEST_CASE("vocabulary and predictor problems") {
  Scratch s;
  const std::string vocab = testing::english_vocab_path();
  REQUIRE(run("compress -q --vocab " + vocab + " " + corpus_path("alice29.txt") + " -o " + (s / "a.azip")) == 0);
  CHECK(run("decompress " + (s / "a.azip") + " -o " + (s / "o"), s / "log") == 4);
  CHECK(testing::read_file(s / "log").find("builtin-k3") != Bytes::npos);

  const Vocabulary bytes = Vocabulary::byte_level();
  protocol::ServerConfig cfg;
  cfg.predictor_id = "echo";
  cfg.predictor_fingerprint = sha256("echo");
  cfg.vocab_fingerprint = bytes.fingerprint();
  cfg.vocab_size = bytes.size();
  auto echo = [](std::span<const TokenId> ctx) {
    return ctx.empty() ? std::vector<TokenId>{} : std::vector<TokenId>{ctx.back()};
  };
  std::string address;
  {
    protocol::LocalServer server(cfg, echo);
    address = server.address();
    REQUIRE(run("compress -q --predictor external:" + address + " " + corpus_path("asyoulik.txt") + " -o " + (s / "e.azip")) == 0);
    CHECK(run("decompress " + (s / "e.azip") + " -o " + (s / "e.txt"), s / "log") == 3);
    CHECK(testing::read_file(s / "log").find("--predictor external:") != Bytes::npos);
    REQUIRE(run("decompress --predictor external:" + address + " " + (s / "e.azip") + " -o " + (s / "e.txt")) == 0);
    CHECK(testing::read_file(s / "e.txt") == testing::corpus("asyoulik.txt"));
  }
  CHECK(run("decompress --predictor external:" + address + " " + (s / "e.azip") + " -o " + (s / "e2.txt")) == 3);
  CHECK(run("compress --predictor external:" + address + " " + corpus_path("asyoulik.txt") + " -o " + (s / "f")) == 3);

  cfg.predictor_fingerprint = sha256("echo v2");
  protocol::LocalServer changed(cfg, echo);
  CHECK(run("decompress --predictor external:" + changed.address() + " " + (s / "e.azip") + " -o " + (s / "e3.txt"), s / "log") == 4);
  CHECK(testing::read_file(s / "log").find("external:echo") != Bytes::npos);
}

TEST_CASE("train-bpe and bench subcommands") {
  Scratch s;
  REQUIRE(run("train-bpe " + corpus_path("lcet10.txt") + " --vocab-size 512 -o " + (s / "v.azvb")) == 0);
  CHECK(Vocabulary::load(s / "v.azvb") == Vocabulary::load(testing::english_vocab_path()));
  CHECK(run("train-bpe " + corpus_path("lcet10.txt") + " --vocab-size 100 -o " + (s / "w.azvb")) == 2);

  REQUIRE(run("bench --format csv --truncate 2000 -p none+deflate -p builtin-k3+varint+brotli " + corpus_path("alice29.txt") +
              " -o " + (s / "r.csv")) == 0);
  const Bytes csv = testing::read_file(s / "r.csv");
  CHECK(csv.starts_with("input,pipeline,uncompressed,compressed,ratio,bpc,entropy,elapsed"));
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
  CHECK(run("bench --format json") == 0);
  CHECK(run("bench -p external:127.0.0.1:1+varint+deflate --truncate 100 " + corpus_path("alice29.txt")) == 1);
  CHECK(run("bench " + (s / "absent.txt")) == 0);
}

TEST_CASE("stdin and stdout") {
  Scratch s;
  const std::string cmd = std::string(RANKZIP_CLI) + " compress -q - < " + corpus_path("alice29.txt") + " | " + RANKZIP_CLI +
                          " decompress - > " + (s / "o");
  REQUIRE(std::system(cmd.c_str()) == 0);
  CHECK(testing::read_file(s / "o") == testing::corpus("alice29.txt"));
}
