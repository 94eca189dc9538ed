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

#include <cmath>
#include <map>

#include "trimcode/error.h"
#include "trimcode/tensor.h"

namespace trimcode {

namespace {

GrayImage MarkovTexture(size_t width, size_t height, double flip, Rng& rng) {
  GrayImage image(width, height);
  bool state = rng.Bernoulli(0.5);
  for (size_t y = 0; y < height; ++y) {
    if (y > 0) state = (image.at(0, y - 1) != 0) != rng.Bernoulli(flip);
    image.at(0, y) = state ? 255 : 0;
    for (size_t x = 1; x < width; ++x) {
      state = state != rng.Bernoulli(flip);
      image.at(x, y) = state ? 255 : 0;
    }
  }
  return image;
}

}  // namespace

const char* CorpusKindName(CorpusKind kind) {
  switch (kind) {
    case CorpusKind::kConstant:
      return "constant";
    case CorpusKind::kIidUniform:
      return "iid-uniform";
    case CorpusKind::kMarkovTexture:
      return "markov-texture";
  }
  return "unknown";
}

CorpusKind ParseCorpusKind(const std::string& name) {
  for (CorpusKind kind : {CorpusKind::kConstant, CorpusKind::kIidUniform,
                          CorpusKind::kMarkovTexture}) {
    if (name == CorpusKindName(kind)) return kind;
  }
  throw Error("unknown corpus kind '" + name +
              "' (expected constant, iid-uniform or markov-texture)");
}

std::vector<GrayImage> GenerateCorpus(const CorpusSpec& spec) {
  if (spec.count == 0 || spec.width == 0 || spec.height == 0) {
    throw Error("corpus count and image extents must be positive");
  }
  if (!(spec.flip_probability >= 0.0 && spec.flip_probability <= 1.0)) {
    throw Error("flip probability must lie in [0, 1]");
  }
  Rng rng(spec.seed);
  std::vector<GrayImage> images;
  images.reserve(spec.count);
  for (size_t n = 0; n < spec.count; ++n) {
    switch (spec.kind) {
      case CorpusKind::kConstant:
        images.emplace_back(spec.width, spec.height, 0);
        break;
      case CorpusKind::kIidUniform: {
        GrayImage image(spec.width, spec.height);
        for (uint8_t& p : image.pixels) {
          p = static_cast<uint8_t>(rng.NextBelow(256));
        }
        images.push_back(std::move(image));
        break;
      }
      case CorpusKind::kMarkovTexture:
        images.push_back(MarkovTexture(spec.width, spec.height,
                                       spec.flip_probability, rng));
        break;
    }
  }
  return images;
}

std::vector<SymbolCuboid> ToBitplaneCorpus(std::span<const GrayImage> images) {
  std::vector<SymbolCuboid> out;
  out.reserve(images.size());
  for (const GrayImage& image : images) out.push_back(ToBitplanes(image));
  return out;
}

double Order0EntropyBits(std::span<const SymbolCuboid> corpus) {
  std::map<uint16_t, size_t> counts;
  size_t total = 0;
  for (const SymbolCuboid& x : corpus) {
    for (uint16_t s : x.symbols()) ++counts[s];
    total += x.size();
  }
  if (total == 0) return 0.0;
  double h = 0.0;
  for (const auto& [symbol, n] : counts) {
    const double p = static_cast<double>(n) / total;
    h -= p * std::log2(p);
  }
  return h;
}

double BinaryEntropy(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -p * std::log2(p) - (1 - p) * std::log2(1 - p);
}

}  // namespace trimcode
