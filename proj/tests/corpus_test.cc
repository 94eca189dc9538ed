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

#include "trimcode/corpus.h"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "trimcode/error.h"

namespace trimcode {
namespace {

// H(0.1) evaluated independently.
constexpr double kEntropyOfTenth = 0.4689955935892812;

TEST(CorpusTest, ConstantImagesAreUniform) {
  CorpusSpec spec;
  spec.kind = CorpusKind::kConstant;
  spec.count = 3;
  spec.width = 5;
  spec.height = 4;
  const std::vector<GrayImage> images = GenerateCorpus(spec);
  ASSERT_EQ(images.size(), 3u);
  for (const GrayImage& image : images) {
    EXPECT_EQ(image.width, 5u);
    EXPECT_EQ(image.height, 4u);
    for (uint8_t p : image.pixels) EXPECT_EQ(p, image.pixels[0]);
  }
}

TEST(CorpusTest, IidUniformPixelEntropyNearEight) {
  CorpusSpec spec;
  spec.kind = CorpusKind::kIidUniform;
  spec.count = 8;
  spec.width = spec.height = 64;
  std::vector<size_t> counts(256, 0);
  size_t total = 0;
  for (const GrayImage& image : GenerateCorpus(spec)) {
    for (uint8_t p : image.pixels) ++counts[p];
    total += image.pixels.size();
  }
  double h = 0.0;
  for (size_t n : counts) {
    if (n > 0) h -= static_cast<double>(n) / total * std::log2(static_cast<double>(n) / total);
  }
  EXPECT_NEAR(h, 8.0, 0.08);
}

TEST(CorpusTest, MarkovTextureStatistics) {
  CorpusSpec spec;
  spec.kind = CorpusKind::kMarkovTexture;
  spec.count = 32;
  spec.width = spec.height = 64;
  spec.flip_probability = 0.1;
  const std::vector<GrayImage> images = GenerateCorpus(spec);
  // Horizontal transitions (vertical ones in column 0).
  size_t flips = 0, transitions = 0, ones = 0, pixels = 0;
  for (const GrayImage& image : images) {
    for (size_t y = 0; y < image.height; ++y) {
      for (size_t x = 0; x < image.width; ++x) {
        const uint8_t p = image.at(x, y);
        ASSERT_TRUE(p == 0 || p == 255);
        ones += p == 255;
        ++pixels;
        if (x > 0 || y > 0) {
          const uint8_t prev = x > 0 ? image.at(x - 1, y) : image.at(0, y - 1);
          flips += p != prev;
          ++transitions;
        }
      }
    }
  }
  const double flip_rate = static_cast<double>(flips) / transitions;
  EXPECT_NEAR(flip_rate, 0.1, 0.01);
  EXPECT_NEAR(BinaryEntropy(flip_rate), kEntropyOfTenth, 0.02);
  const double q = static_cast<double>(ones) / pixels;
  EXPECT_NEAR(BinaryEntropy(q), 1.0, 0.02);
  // Every plane of a 0/255 image equals the MSB plane.
  const std::vector<SymbolCuboid> planes = ToBitplaneCorpus(images);
  EXPECT_NEAR(Order0EntropyBits(planes), BinaryEntropy(q), 1e-12);
}

TEST(CorpusTest, Deterministic) {
  CorpusSpec spec;
  spec.kind = CorpusKind::kMarkovTexture;
  spec.count = 2;
  spec.seed = 11;
  EXPECT_EQ(GenerateCorpus(spec), GenerateCorpus(spec));
  CorpusSpec other = spec;
  other.seed = 12;
  EXPECT_NE(GenerateCorpus(spec), GenerateCorpus(other));
}

TEST(CorpusTest, Validation) {
  CorpusSpec spec;
  spec.count = 0;
  EXPECT_THROW(GenerateCorpus(spec), Error);
  spec.count = 1;
  spec.flip_probability = 1.5;
  EXPECT_THROW(GenerateCorpus(spec), Error);
  EXPECT_THROW(ParseCorpusKind("noise"), Error);
  EXPECT_EQ(ParseCorpusKind(CorpusKindName(CorpusKind::kIidUniform)),
            CorpusKind::kIidUniform);
}

TEST(EntropyTest, KnownValues) {
  EXPECT_EQ(BinaryEntropy(0.5), 1.0);
  EXPECT_EQ(BinaryEntropy(0.0), 0.0);
  EXPECT_EQ(BinaryEntropy(1.0), 0.0);
  EXPECT_NEAR(BinaryEntropy(0.1), kEntropyOfTenth, 1e-15);
  const std::vector<SymbolCuboid> one = {
      SymbolCuboid(2, 2, 1, 4, std::vector<uint16_t>{0, 1, 2, 3})};
  EXPECT_EQ(Order0EntropyBits(one), 2.0);
}

}  // namespace
}  // namespace trimcode
