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

#ifndef TRIMCODE_SCHEDULE_H_
#define TRIMCODE_SCHEDULE_H_

#include <cstddef>
#include <vector>

#include "trimcode/trim_conv.h"

namespace trimcode {

// Positions with i fastest, then j, then k.
std::vector<Position> RasterOrder(size_t width, size_t height, size_t depth);

// All positions with i + j + k == t, ascending by k, then by i.
struct SlopeBlock {
  int t = 0;
  std::vector<Position> positions;
};

// Blocks for t = 0 .. (W-1)+(H-1)+(C-1): W + H + C - 2 of them.
std::vector<SlopeBlock> SlopeBlocks(size_t width, size_t height, size_t depth);

// The order symbols are fed to the arithmetic coder.
std::vector<Position> CodingOrder(Schedule schedule, size_t width,
                                  size_t height, size_t depth);

}  // namespace trimcode

#endif  // TRIMCODE_SCHEDULE_H_
