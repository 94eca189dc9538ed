// Copyright 2026 The trimcode Authors
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

#include "cli.h"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "test_support.h"
#include "trimcode/model_io.h"
#include "trimcode/pgm.h"

namespace trimcode::cli {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;

  std::vector<std::string> OutLines() const {
    std::vector<std::string> lines;
    std::istringstream in(out);
    for (std::string line; std::getline(in, line);) lines.push_back(line);
    return lines;
  }
  std::map<std::string, std::string> LastRecord() const {
    const std::vector<std::string> lines = OutLines();
    return lines.empty() ? std::map<std::string, std::string>{}
                         : ParseRecord(lines.back());
  }
};

Outcome RunCli(std::vector<std::string> args) {
  args.insert(args.begin(), "trimcode");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Outcome o;
  o.code = Run(static_cast<int>(argv.size()), argv.data(), out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

size_t LineCount(const std::string& text) {
  size_t n = 0;
  for (char c : text) n += c == '\n';
  return n;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override { dir_ = testing::MakeTempDir("cli"); }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Path(const std::string& name) const { return dir_ + "/" + name; }

  // Tiny bit-plane model on 8x8 textures.
  std::string TrainTiny(const std::string& schedule, const std::string& name) {
    const Outcome o = RunCli({"train", "--size", "8", "--count", "4",
                              "--groups", "2", "--blocks", "1", "--steps", "20",
                              "--eval-interval", "10", "--schedule", schedule,
                              "--metrics", Path(name + ".log"), "--seed", "7",
                              "--output", Path(name)});
    EXPECT_EQ(o.code, 0) << o.err;
    return Path(name);
  }

  std::string dir_;
};

TEST_F(CliTest, GenCorpusWritesImages) {
  const Outcome o = RunCli({"gen-corpus", "--kind", "constant", "--count", "3",
                            "--size", "5", "--output", Path("c")});
  ASSERT_EQ(o.code, 0) << o.err;
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(Path("c"))) files.push_back(e.path());
  ASSERT_EQ(files.size(), 3u);
  for (const fs::path& f : files) {
    const GrayImage image = ReadPgm(f.string());
    EXPECT_EQ(image.width, 5u);
    for (uint8_t p : image.pixels) EXPECT_EQ(p, image.pixels[0]);
  }
  const auto record = o.LastRecord();
  EXPECT_EQ(record.at("kind"), "constant");
  EXPECT_EQ(record.at("count"), "3");
  EXPECT_EQ(std::stod(record.at("plane_entropy")), 0.0);
}

TEST_F(CliTest, TrainIsDeterministicAndLogsMetrics) {
  const std::string a = TrainTiny("raster", "a.tcm");
  const std::string b = TrainTiny("raster", "b.tcm");
  EXPECT_EQ(ReadFileBytes(a), ReadFileBytes(b));
  const std::vector<uint8_t> log_bytes = ReadFileBytes(a + ".log");
  std::istringstream log(std::string(log_bytes.begin(), log_bytes.end()));
  std::vector<std::map<std::string, std::string>> records;
  for (std::string line; std::getline(log, line);) records.push_back(ParseRecord(line));
  ASSERT_EQ(records.size(), 2u);
  EXPECT_EQ(records[0].at("step"), "10");
  EXPECT_EQ(records[1].at("step"), "20");
  EXPECT_EQ(std::stod(records[0].at("learning_rate")), 3e-4);
  EXPECT_GT(std::stod(records[1].at("bits_per_symbol")), 0.0);
}

TEST_F(CliTest, TrainingBeatsOrderZeroEntropy) {
  const Outcome o = RunCli({"train", "--kind", "markov-texture", "--count", "32",
                            "--size", "16", "--groups", "2", "--blocks", "1",
                            "--batch", "1", "--steps", "2000", "--seed", "3",
                            "--metrics", Path("m.log"), "--output", Path("m.tcm")});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto record = o.LastRecord();
  EXPECT_LT(std::stod(record.at("bits_per_symbol")),
            std::stod(record.at("order0_entropy")));
}

TEST_F(CliTest, ErrorsAreOneLine) {
  fs::create_directories(Path("empty"));
  Outcome o = RunCli({"train", "--input", Path("empty"), "--output", Path("x.tcm")});
  EXPECT_EQ(o.code, 1);
  EXPECT_EQ(LineCount(o.err), 1u) << o.err;
  EXPECT_FALSE(fs::exists(Path("x.tcm")));

  o = RunCli({"compress", "--model", Path("missing.tcm"), "--input", Path("a.pgm"),
              "--output", Path("a.tcae")});
  EXPECT_EQ(o.code, 1);
  EXPECT_EQ(LineCount(o.err), 1u) << o.err;

  o = RunCli({"train", "--steps", "0", "--output", Path("x.tcm")});
  EXPECT_EQ(o.code, 2);
  EXPECT_EQ(LineCount(o.err), 1u) << o.err;

  o = RunCli({"compress", "--schedule", "zigzag"});
  EXPECT_EQ(o.code, 2);
  EXPECT_EQ(LineCount(o.err), 1u) << o.err;

  o = RunCli({});
  EXPECT_EQ(o.code, 2);
  EXPECT_EQ(LineCount(o.err), 1u) << o.err;
}

TEST_F(CliTest, CompressDecompressBothSchedules) {
  ASSERT_EQ(RunCli({"gen-corpus", "--count", "1", "--size", "12", "--seed", "4",
                    "--output", Path("img")})
                .code,
            0);
  const std::string image = Path("img/markov-texture_0000.pgm");
  std::vector<uint8_t> containers[2];
  int s = 0;
  for (const std::string schedule : {"raster", "slope"}) {
    const std::string model = TrainTiny(schedule, schedule + ".tcm");
    const std::string packed = Path(schedule + ".tcae");
    const std::string restored = Path(schedule + ".pgm");
    Outcome o = RunCli({"compress", "--model", model, "--input", image,
                        "--output", packed, "--tile", "8"});
    ASSERT_EQ(o.code, 0) << o.err;
    const auto record = o.LastRecord();
    const double payload_bits = std::stod(record.at("payload_bits"));
    EXPECT_EQ(record.at("schedule"), schedule);
    EXPECT_NEAR(std::stod(record.at("ratio")), 8.0 * 12 * 12 / payload_bits, 1e-8);

    o = RunCli({"decompress", "--model", model, "--input", packed, "--output",
                restored});
    ASSERT_EQ(o.code, 0) << o.err;
    EXPECT_EQ(ReadFileBytes(restored), ReadFileBytes(image));
    const size_t passes = std::stoul(o.LastRecord().at("forward_passes"));
    // 12x12 in 8-tiles: 8x8, 4x8, 8x4, 4x4.
    EXPECT_EQ(passes, schedule == "raster" ? size_t{12 * 12 * 8}
                                           : size_t{22 + 18 + 18 + 14});
    containers[s++] = ReadFileBytes(packed);

    o = RunCli({"decompress", "--model", model, "--input", packed, "--output",
                restored, "--schedule", schedule == "raster" ? "slope" : "raster"});
    EXPECT_EQ(o.code, 1);
  }
  EXPECT_NE(containers[0], containers[1]);
}

TEST_F(CliTest, BenchReportsPassCounts) {
  const Outcome o = RunCli({"bench", "--size", "16", "--groups", "2", "--blocks",
                            "1", "--tile", "0"});
  ASSERT_EQ(o.code, 0) << o.err;
  const std::vector<std::string> lines = o.OutLines();
  ASSERT_EQ(lines.size(), 3u);
  const auto raster = ParseRecord(lines[0]);
  const auto slope = ParseRecord(lines[1]);
  const auto summary = ParseRecord(lines[2]);
  EXPECT_EQ(raster.at("schedule"), "raster");
  EXPECT_EQ(slope.at("schedule"), "slope");
  EXPECT_EQ(raster.at("depth"), "8");
  EXPECT_EQ(summary.at("raster_passes"), "2048");
  EXPECT_EQ(summary.at("slope_passes"), "38");
  EXPECT_NEAR(std::stod(summary.at("pass_ratio")), 2048.0 / 38, 1e-8);
  EXPECT_LT(std::stod(slope.at("decode_seconds")),
            std::stod(raster.at("decode_seconds")));
}

TEST_F(CliTest, InpaintIdentityAndDeterminism) {
  ASSERT_EQ(RunCli({"gen-corpus", "--kind", "iid-uniform", "--count", "1",
                    "--size", "9", "--output", Path("img")})
                .code,
            0);
  const std::string image = Path("img/iid-uniform_0000.pgm");
  const std::string model = TrainTiny("raster", "r.tcm");
  Outcome o = RunCli({"inpaint", "--model", model, "--input", image, "--output",
                      Path("same.pgm"), "--region", "0,0,0,0"});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_EQ(ReadFileBytes(Path("same.pgm")), ReadFileBytes(image));

  for (const char* name : {"a.pgm", "b.pgm"}) {
    o = RunCli({"inpaint", "--model", model, "--input", image, "--output",
                Path(name), "--seed", "5"});
    ASSERT_EQ(o.code, 0) << o.err;
    EXPECT_EQ(o.LastRecord().at("region"), "6,6,3,3");
  }
  EXPECT_EQ(ReadFileBytes(Path("a.pgm")), ReadFileBytes(Path("b.pgm")));

  o = RunCli({"inpaint", "--model", model, "--input", image, "--output",
              Path("c.pgm"), "--region", "8,8,2,2"});
  EXPECT_EQ(o.code, 1);
  EXPECT_EQ(LineCount(o.err), 1u);
  o = RunCli({"inpaint", "--model", model, "--input", image, "--output",
              Path("c.pgm"), "--region", "1,2,3"});
  EXPECT_EQ(o.code, 1);
}

TEST_F(CliTest, BinaryExitCodes) {
  const std::string exe = TRIMCODE_CLI_PATH;
  const std::string quiet = " >" + Path("out.txt") + " 2>" + Path("err.txt");
  EXPECT_EQ(std::system((exe + " --help" + quiet).c_str()), 0);
  EXPECT_NE(std::system((exe + " frobnicate" + quiet).c_str()), 0);
  EXPECT_NE(std::system((exe + " decompress --model " + Path("none") + " --input " +
                         Path("none") + " --output " + Path("o.pgm") + quiet)
                            .c_str()),
            0);
  const std::vector<uint8_t> err = ReadFileBytes(Path("err.txt"));
  EXPECT_EQ(LineCount(std::string(err.begin(), err.end())), 1u);
}

}  // namespace
}  // namespace trimcode::cli
