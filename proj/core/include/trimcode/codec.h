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

#ifndef TRIMCODE_CODEC_H_
#define TRIMCODE_CODEC_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "trimcode/arithmetic_coder.h"
#include "trimcode/byte_io.h"
#include "trimcode/context_model.h"
#include "trimcode/symbol_cuboid.h"
#include "trimcode/trim_conv.h"

namespace trimcode {

// Container layout, all fields little-endian:
//
//   "TCAE"                                  4 bytes
//   version                                 uint32 (1)
//   schedule                                uint32 (0 raster, 1 slope)
//   width, height, depth, alphabet size     4 x uint32
//   tile size                               uint32 (0: untiled)
//   model hash                              uint64 (ModelHash)
//   payload length                          uint32, bytes after the header
//   per tile: length (uint32), coder bytes
//
// Tiles cover [a*T, (a+1)*T) x [b*T, (b+1)*T), clipped to the image, full
// depth, ordered by b then a. Each tile is coded independently with the
// model seeing only that tile.
struct CodecHeader {
  static constexpr char kMagic[4] = {'T', 'C', 'A', 'E'};
  static constexpr uint32_t kVersion = 1;
  static constexpr size_t kSize = 44;

  Schedule schedule = Schedule::kRaster;
  uint32_t width = 0;
  uint32_t height = 0;
  uint32_t depth = 0;
  uint32_t alphabet_size = 0;
  uint32_t tile_size = 0;
  uint64_t model_hash = 0;
  uint32_t payload_length = 0;

  void Write(ByteWriter& out) const;
  static CodecHeader Read(ByteReader& in);

  friend bool operator==(const CodecHeader&, const CodecHeader&) = default;
};

CodecHeader PeekHeader(std::span<const uint8_t> stream);

struct TileRect {
  size_t x0 = 0;
  size_t y0 = 0;
  size_t width = 0;
  size_t height = 0;
};

std::vector<TileRect> TileGrid(size_t width, size_t height, uint32_t tile_size);

struct CodecOptions {
  // Record the m probabilities the coder used at each step, in coding order
  // (tile by tile).
  bool capture_probabilities = false;
};

struct CodecStats {
  size_t forward_passes = 0;
  size_t tiles = 0;
  // FNV-1a over the quantized counts fed to the coder, folded per tile.
  uint64_t pmf_hash = 0;
  std::vector<double> probabilities;
};

struct EncodeResult {
  std::vector<uint8_t> bytes;
  CodecStats stats;
};

struct DecodeResult {
  SymbolCuboid cuboid;
  CodecStats stats;
};

// Clamps each probability at kProbabilityFloor, renormalizes, quantizes.
QuantizedPmf CoderPmf(std::span<const double> probabilities);

// One forward pass per tile. `schedule` must match the model.
EncodeResult Encode(const SymbolCuboid& x, const ContextModel& model,
                    Schedule schedule, uint32_t tile_size,
                    const CodecOptions& options = {});

// One forward pass per symbol.
DecodeResult DecodeRaster(std::span<const uint8_t> stream,
                          const ContextModel& model,
                          const CodecOptions& options = {});
// One forward pass per slope block.
DecodeResult DecodeSlope(std::span<const uint8_t> stream,
                         const ContextModel& model,
                         const CodecOptions& options = {});
// Dispatches on the schedule in the header.
DecodeResult Decode(std::span<const uint8_t> stream, const ContextModel& model,
                    const CodecOptions& options = {});

}  // namespace trimcode

#endif  // TRIMCODE_CODEC_H_
