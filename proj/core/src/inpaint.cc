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

#include "trimcode/inpaint.h"

#include <algorithm>
#include <vector>

#include "trimcode/error.h"

namespace trimcode {

Region DefaultInpaintRegion(size_t width, size_t height) {
  const size_t w = std::max<size_t>(1, width / 3);
  const size_t h = std::max<size_t>(1, height / 3);
  return {width - w, height - h, w, h};
}

SymbolCuboid InpaintCuboid(const SymbolCuboid& x, const Region& region,
                           const ContextModel& model, Rng& rng) {
  const ModelConfig& config = model.config();
  if (config.schedule != Schedule::kRaster) {
    throw Error("inpainting requires a raster-schedule model");
  }
  if (x.depth() != config.depth || x.alphabet_size() != config.alphabet_size) {
    throw Error("cuboid depth or alphabet size does not match the model");
  }
  if (region.x + region.width > x.width() ||
      region.y + region.height > x.height()) {
    throw Error("inpaint region outside the image");
  }
  SymbolCuboid out = x;
  if (region.width == 0 || region.height == 0) return out;
  for (size_t k = 0; k < x.depth(); ++k) {
    for (size_t j = region.y; j < region.y + region.height; ++j) {
      for (size_t i = region.x; i < region.x + region.width; ++i) {
        out.set({static_cast<int>(i), static_cast<int>(j), static_cast<int>(k)},
                0);
      }
    }
  }
  std::vector<double> pmf(config.alphabet_size);
  for (size_t k = 0; k < x.depth(); ++k) {
    for (size_t j = region.y; j < region.y + region.height; ++j) {
      for (size_t i = region.x; i < region.x + region.width; ++i) {
        const Position pos{static_cast<int>(i), static_cast<int>(j),
                           static_cast<int>(k)};
        model.Forward(out).Pmf(pos, pmf);
        const double u = rng.NextDouble();
        double cumulative = 0.0;
        uint16_t symbol = static_cast<uint16_t>(pmf.size() - 1);
        for (size_t s = 0; s + 1 < pmf.size(); ++s) {
          cumulative += pmf[s];
          if (u < cumulative) {
            symbol = static_cast<uint16_t>(s);
            break;
          }
        }
        out.set(pos, symbol);
      }
    }
  }
  return out;
}

GrayImage InpaintImage(const GrayImage& image, const Region& region,
                       const ContextModel& model, Rng& rng) {
  if (model.config().alphabet_size != 2 || model.config().depth != kBitPlanes) {
    throw Error("image inpainting needs a binary 8-plane model");
  }
  return FromBitplanes(InpaintCuboid(ToBitplanes(image), region, model, rng));
}

}  // namespace trimcode
