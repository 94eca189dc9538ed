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

#ifndef TRIMCODE_BITPLANES_H_
#define TRIMCODE_BITPLANES_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "trimcode/symbol_cuboid.h"

namespace trimcode {

// 8-bit gray image, row-major (x fastest).
struct GrayImage {
  size_t width = 0;
  size_t height = 0;
  std::vector<uint8_t> pixels;

  GrayImage() = default;
  GrayImage(size_t w, size_t h, uint8_t fill = 0)
      : width(w), height(h), pixels(w * h, fill) {}

  // Rejects values outside [0, 255].
  static GrayImage FromValues(size_t w, size_t h, std::span<const int> values);

  uint8_t at(size_t x, size_t y) const { return pixels[y * width + x]; }
  uint8_t& at(size_t x, size_t y) { return pixels[y * width + x]; }

  friend bool operator==(const GrayImage&, const GrayImage&) = default;
};

inline constexpr size_t kBitPlanes = 8;

// W x H x 8 binary cuboid; plane k holds bit (7 - k), so k = 0 is the MSB.
SymbolCuboid ToBitplanes(const GrayImage& image);
GrayImage FromBitplanes(const SymbolCuboid& planes);

}  // namespace trimcode

#endif  // TRIMCODE_BITPLANES_H_
