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

#include "trimcode/model_io.h"

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <limits>
#include <string>

#include "test_support.h"
#include "trimcode/error.h"

namespace trimcode {
namespace {

ContextModel SampleModel(Schedule schedule = Schedule::kSlope) {
  ModelConfig c;
  c.alphabet_size = 4;
  c.groups = 2;
  c.depth = 3;
  c.schedule = schedule;
  c.residual_blocks = 1;
  Rng rng(21);
  return testing::RandomModel(c, rng);
}

uint32_t ReadU32(const std::vector<uint8_t>& b, size_t at) {
  return b[at] | b[at + 1] << 8 | b[at + 2] << 16 | uint32_t{b[at + 3]} << 24;
}

TEST(ModelIoTest, RoundTripIsBitExact) {
  const ContextModel model = SampleModel();
  EXPECT_EQ(LoadModel(SaveModel(model)), model);
}

TEST(ModelIoTest, Layout) {
  const ContextModel model = SampleModel();
  const std::vector<uint8_t> bytes = SaveModel(model);
  ASSERT_EQ(bytes.size(), 8 + 5 * 4 + 8 * model.ParameterCount());
  EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + 8), "TCAEMDL1");
  EXPECT_EQ(ReadU32(bytes, 8), 4u);   // m
  EXPECT_EQ(ReadU32(bytes, 12), 2u);  // g
  EXPECT_EQ(ReadU32(bytes, 16), 3u);  // C
  EXPECT_EQ(ReadU32(bytes, 20), 1u);  // slope
  EXPECT_EQ(ReadU32(bytes, 24), 1u);  // residual blocks
  // First parameter: conv0 weight [0][0][0][0][0], little-endian float64.
  uint64_t raw = 0;
  for (int b = 7; b >= 0; --b) raw = raw << 8 | bytes[28 + b];
  double first;
  std::memcpy(&first, &raw, sizeof first);
  EXPECT_EQ(first, model.layers()[0].weights()[0]);
}

TEST(ModelIoTest, CorruptMagicRejected) {
  std::vector<uint8_t> bytes = SaveModel(SampleModel());
  bytes[0] = 'X';
  EXPECT_THROW(LoadModel(bytes), Error);
}

TEST(ModelIoTest, TruncationAndTrailingBytesRejected) {
  const std::vector<uint8_t> bytes = SaveModel(SampleModel());
  for (size_t n : {size_t{0}, size_t{5}, size_t{27}, bytes.size() - 1}) {
    EXPECT_THROW(LoadModel(std::span(bytes.data(), n)), Error) << n;
  }
  std::vector<uint8_t> longer = bytes;
  longer.push_back(0);
  EXPECT_THROW(LoadModel(longer), Error);
}

TEST(ModelIoTest, BadConfigRejected) {
  std::vector<uint8_t> bytes = SaveModel(SampleModel());
  std::vector<uint8_t> bad_schedule = bytes;
  bad_schedule[20] = 7;
  EXPECT_THROW(LoadModel(bad_schedule), Error);
  std::vector<uint8_t> bad_m = bytes;
  bad_m[8] = 1;
  EXPECT_THROW(LoadModel(bad_m), Error);
}

TEST(ModelIoTest, NonFiniteParameterRejected) {
  std::vector<uint8_t> bytes = SaveModel(SampleModel());
  const double nan = std::numeric_limits<double>::quiet_NaN();
  uint64_t raw;
  std::memcpy(&raw, &nan, sizeof raw);
  for (int b = 0; b < 8; ++b) bytes[28 + b] = static_cast<uint8_t>(raw >> (8 * b));
  EXPECT_THROW(LoadModel(bytes), Error);
}

TEST(ModelIoTest, FileRoundTrip) {
  const std::string dir = testing::MakeTempDir("model_io");
  const std::string path = dir + "/m.tcm";
  const ContextModel model = SampleModel(Schedule::kRaster);
  WriteModelFile(model, path);
  EXPECT_EQ(ReadModelFile(path), model);
  EXPECT_THROW(ReadModelFile(dir + "/missing.tcm"), Error);
  std::filesystem::remove_all(dir);
}

TEST(Fnv1aTest, ReferenceVectors) {
  // Published FNV-1a 64-bit test vectors.
  EXPECT_EQ(Fnv1a64({}), 0xcbf29ce484222325ull);
  const uint8_t a[] = {'a'};
  EXPECT_EQ(Fnv1a64(a), 0xaf63dc4c8601ec8cull);
  const uint8_t foobar[] = {'f', 'o', 'o', 'b', 'a', 'r'};
  EXPECT_EQ(Fnv1a64(foobar), 0x85944171f73967e8ull);
}

TEST(ModelHashTest, SensitiveToParametersAndConfig) {
  ContextModel model = SampleModel();
  const uint64_t base = ModelHash(model);
  EXPECT_EQ(ModelHash(SampleModel()), base);
  model.final_layer().bias()[0] += 1e-12;
  EXPECT_NE(ModelHash(model), base);
  EXPECT_NE(ModelHash(SampleModel(Schedule::kRaster)), base);
}

}  // namespace
}  // namespace trimcode
