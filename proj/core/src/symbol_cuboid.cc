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

#include "trimcode/symbol_cuboid.h"

#include <string>
#include <utility>

#include "trimcode/error.h"

namespace trimcode {

namespace {

void CheckExtents(size_t width, size_t height, size_t depth,
                  uint32_t alphabet_size) {
  if (width == 0 || height == 0 || depth == 0) {
    throw Error("symbol cuboid extents must be positive");
  }
  if (alphabet_size < 2 || alphabet_size > 65536) {
    throw Error("alphabet size must be in [2, 65536], got " +
                std::to_string(alphabet_size));
  }
}

}  // namespace

SymbolCuboid::SymbolCuboid(size_t width, size_t height, size_t depth,
                           uint32_t alphabet_size)
    : width_(width),
      height_(height),
      depth_(depth),
      alphabet_size_(alphabet_size),
      symbols_(width * height * depth, 0) {
  CheckExtents(width, height, depth, alphabet_size);
}

SymbolCuboid::SymbolCuboid(size_t width, size_t height, size_t depth,
                           uint32_t alphabet_size,
                           std::vector<uint16_t> symbols)
    : width_(width),
      height_(height),
      depth_(depth),
      alphabet_size_(alphabet_size),
      symbols_(std::move(symbols)) {
  CheckExtents(width, height, depth, alphabet_size);
  if (symbols_.size() != width * height * depth) {
    throw Error("symbol count does not match cuboid extents");
  }
  for (uint16_t s : symbols_) {
    if (s >= alphabet_size) {
      throw Error("symbol " + std::to_string(s) + " outside alphabet of size " +
                  std::to_string(alphabet_size));
    }
  }
}

void SymbolCuboid::set(const Position& pos, uint16_t symbol) {
  if (symbol >= alphabet_size_) throw Error("symbol outside alphabet");
  symbols_[Index(pos)] = symbol;
}

SymbolCuboid SymbolCuboid::Crop(size_t x0, size_t y0, size_t w,
                                size_t h) const {
  if (x0 + w > width_ || y0 + h > height_) throw Error("crop out of bounds");
  SymbolCuboid out(w, h, depth_, alphabet_size_);
  for (size_t k = 0; k < depth_; ++k) {
    for (size_t j = 0; j < h; ++j) {
      for (size_t i = 0; i < w; ++i) {
        out.symbols_[i + w * (j + h * k)] =
            symbols_[(x0 + i) + width_ * ((y0 + j) + height_ * k)];
      }
    }
  }
  return out;
}

void SymbolCuboid::Paste(const SymbolCuboid& block, size_t x0, size_t y0) {
  if (block.depth_ != depth_ || x0 + block.width_ > width_ ||
      y0 + block.height_ > height_) {
    throw Error("paste out of bounds");
  }
  for (size_t k = 0; k < depth_; ++k) {
    for (size_t j = 0; j < block.height_; ++j) {
      for (size_t i = 0; i < block.width_; ++i) {
        symbols_[(x0 + i) + width_ * ((y0 + j) + height_ * k)] =
            block.symbols_[i + block.width_ * (j + block.height_ * k)];
      }
    }
  }
}

}  // namespace trimcode
