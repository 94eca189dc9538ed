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

#include "trimcode/schedule.h"

#include "trimcode/error.h"

namespace trimcode {

namespace {

void CheckExtents(size_t width, size_t height, size_t depth) {
  if (width == 0 || height == 0 || depth == 0) {
    throw Error("schedule extents must be positive");
  }
}

}  // namespace

std::vector<Position> RasterOrder(size_t width, size_t height, size_t depth) {
  CheckExtents(width, height, depth);
  std::vector<Position> order;
  order.reserve(width * height * depth);
  for (size_t k = 0; k < depth; ++k) {
    for (size_t j = 0; j < height; ++j) {
      for (size_t i = 0; i < width; ++i) {
        order.push_back({static_cast<int>(i), static_cast<int>(j),
                         static_cast<int>(k)});
      }
    }
  }
  return order;
}

std::vector<SlopeBlock> SlopeBlocks(size_t width, size_t height,
                                    size_t depth) {
  CheckExtents(width, height, depth);
  const int w = static_cast<int>(width);
  const int h = static_cast<int>(height);
  const int c = static_cast<int>(depth);
  std::vector<SlopeBlock> blocks;
  blocks.reserve(w + h + c - 2);
  for (int t = 0; t <= (w - 1) + (h - 1) + (c - 1); ++t) {
    SlopeBlock block{t, {}};
    for (int k = 0; k < c && k <= t; ++k) {
      for (int i = 0; i < w && i + k <= t; ++i) {
        const int j = t - i - k;
        if (j < h) block.positions.push_back({i, j, k});
      }
    }
    blocks.push_back(std::move(block));
  }
  return blocks;
}

std::vector<Position> CodingOrder(Schedule schedule, size_t width,
                                  size_t height, size_t depth) {
  if (schedule == Schedule::kRaster) return RasterOrder(width, height, depth);
  std::vector<Position> order;
  order.reserve(width * height * depth);
  for (const SlopeBlock& block : SlopeBlocks(width, height, depth)) {
    order.insert(order.end(), block.positions.begin(), block.positions.end());
  }
  return order;
}

}  // namespace trimcode
