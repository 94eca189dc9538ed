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

#ifndef TRIMCODE_INPAINT_H_
#define TRIMCODE_INPAINT_H_

#include <cstddef>

#include "trimcode/bitplanes.h"
#include "trimcode/context_model.h"
#include "trimcode/symbol_cuboid.h"
#include "trimcode/tensor.h"

namespace trimcode {

// Spatial rectangle [x, x + width) x [y, y + height).
struct Region {
  size_t x = 0;
  size_t y = 0;
  size_t width = 0;
  size_t height = 0;
};

// The bottom-right block of a third of each extent (at least one pixel).
Region DefaultInpaintRegion(size_t width, size_t height);

// Resamples every symbol inside `region` (all depth slices) from the model,
// visiting positions in raster order with one forward pass per position.
// Symbols outside the region are kept. Requires a raster model.
SymbolCuboid InpaintCuboid(const SymbolCuboid& x, const Region& region,
                           const ContextModel& model, Rng& rng);

// Bit-plane wrapper: the model must have m = 2 and C = 8.
GrayImage InpaintImage(const GrayImage& image, const Region& region,
                       const ContextModel& model, Rng& rng);

}  // namespace trimcode

#endif  // TRIMCODE_INPAINT_H_
