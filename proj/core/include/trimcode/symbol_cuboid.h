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

#ifndef TRIMCODE_SYMBOL_CUBOID_H_
#define TRIMCODE_SYMBOL_CUBOID_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "trimcode/trim_conv.h"

namespace trimcode {

// W x H x C grid of symbols in [0, m). Storage is raster order: i fastest,
// then j, then k.
class SymbolCuboid {
 public:
  SymbolCuboid() = default;
  SymbolCuboid(size_t width, size_t height, size_t depth,
               uint32_t alphabet_size);
  SymbolCuboid(size_t width, size_t height, size_t depth,
               uint32_t alphabet_size, std::vector<uint16_t> symbols);

  size_t width() const { return width_; }
  size_t height() const { return height_; }
  size_t depth() const { return depth_; }
  uint32_t alphabet_size() const { return alphabet_size_; }
  size_t size() const { return symbols_.size(); }

  size_t Index(const Position& pos) const {
    return pos.i + width_ * (pos.j + height_ * pos.k);
  }
  uint16_t at(const Position& pos) const { return symbols_[Index(pos)]; }
  void set(const Position& pos, uint16_t symbol);

  std::span<const uint16_t> symbols() const { return symbols_; }

  // Spatial sub-block [x0, x0 + w) x [y0, y0 + h), full depth.
  SymbolCuboid Crop(size_t x0, size_t y0, size_t w, size_t h) const;
  void Paste(const SymbolCuboid& block, size_t x0, size_t y0);

  friend bool operator==(const SymbolCuboid&, const SymbolCuboid&) = default;

 private:
  size_t width_ = 0;
  size_t height_ = 0;
  size_t depth_ = 0;
  uint32_t alphabet_size_ = 2;
  std::vector<uint16_t> symbols_;
};

}  // namespace trimcode

#endif  // TRIMCODE_SYMBOL_CUBOID_H_
