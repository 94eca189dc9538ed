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

#include "trimcode/bitplanes.h"

#include <string>

#include "trimcode/error.h"

namespace trimcode {

GrayImage GrayImage::FromValues(size_t w, size_t h,
                                std::span<const int> values) {
  if (values.size() != w * h) throw Error("pixel count does not match extents");
  GrayImage image(w, h);
  for (size_t e = 0; e < values.size(); ++e) {
    if (values[e] < 0 || values[e] > 255) {
      throw Error("pixel value " + std::to_string(values[e]) +
                  " outside [0, 255]");
    }
    image.pixels[e] = static_cast<uint8_t>(values[e]);
  }
  return image;
}

SymbolCuboid ToBitplanes(const GrayImage& image) {
  if (image.width == 0 || image.height == 0 ||
      image.pixels.size() != image.width * image.height) {
    throw Error("malformed gray image");
  }
  const size_t plane = image.width * image.height;
  std::vector<uint16_t> bits(plane * kBitPlanes);
  for (size_t k = 0; k < kBitPlanes; ++k) {
    const int shift = static_cast<int>(kBitPlanes - 1 - k);
    for (size_t e = 0; e < plane; ++e) {
      bits[k * plane + e] = (image.pixels[e] >> shift) & 1;
    }
  }
  return SymbolCuboid(image.width, image.height, kBitPlanes, 2,
                      std::move(bits));
}

GrayImage FromBitplanes(const SymbolCuboid& planes) {
  if (planes.depth() != kBitPlanes || planes.alphabet_size() != 2) {
    throw Error("bit-plane cuboid must have depth 8 and alphabet size 2");
  }
  GrayImage image(planes.width(), planes.height());
  const size_t plane = image.width * image.height;
  const auto bits = planes.symbols();
  for (size_t k = 0; k < kBitPlanes; ++k) {
    const int shift = static_cast<int>(kBitPlanes - 1 - k);
    for (size_t e = 0; e < plane; ++e) {
      image.pixels[e] |= static_cast<uint8_t>(bits[k * plane + e] << shift);
    }
  }
  return image;
}

}  // namespace trimcode
