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

#include "trimcode/codec.h"

#include <algorithm>
#include <string>

#include "trimcode/error.h"
#include "trimcode/model_io.h"
#include "trimcode/parallel.h"
#include "trimcode/schedule.h"

namespace trimcode {

namespace {

constexpr uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr uint64_t kFnvPrime = 0x100000001b3ULL;

void HashU32(uint64_t& h, uint32_t v) {
  for (int b = 0; b < 4; ++b) {
    h ^= (v >> (8 * b)) & 0xff;
    h *= kFnvPrime;
  }
}

void HashU64(uint64_t& h, uint64_t v) {
  HashU32(h, static_cast<uint32_t>(v));
  HashU32(h, static_cast<uint32_t>(v >> 32));
}

struct TileOutput {
  std::vector<uint8_t> bytes;
  SymbolCuboid cuboid;
  size_t forward_passes = 0;
  uint64_t pmf_hash = kFnvOffset;
  std::vector<double> probabilities;
};

// Quantizes the distribution at `pos` and feeds it to the trace.
QuantizedPmf StepPmf(const ProbabilityCuboid& probs, const Position& pos,
                     bool capture, std::vector<double>& scratch,
                     TileOutput& out) {
  probs.Pmf(pos, scratch);
  QuantizedPmf pmf = CoderPmf(scratch);
  for (size_t s = 0; s < pmf.size(); ++s) HashU32(out.pmf_hash, pmf.count(s));
  if (capture) {
    out.probabilities.insert(out.probabilities.end(), scratch.begin(),
                             scratch.end());
  }
  return pmf;
}

TileOutput EncodeTile(const SymbolCuboid& tile, const ContextModel& model,
                      Schedule schedule, bool capture) {
  TileOutput out;
  const ProbabilityCuboid probs = model.Forward(tile);
  out.forward_passes = 1;
  std::vector<double> scratch(tile.alphabet_size());
  ArithmeticEncoder encoder;
  for (const Position& pos :
       CodingOrder(schedule, tile.width(), tile.height(), tile.depth())) {
    encoder.Encode(tile.at(pos), StepPmf(probs, pos, capture, scratch, out));
  }
  out.bytes = encoder.Finish();
  return out;
}

TileOutput DecodeTile(std::span<const uint8_t> bytes, const TileRect& rect,
                      const ContextModel& model, bool capture) {
  const ModelConfig& config = model.config();
  TileOutput out;
  out.cuboid = SymbolCuboid(rect.width, rect.height, config.depth,
                            config.alphabet_size);
  std::vector<double> scratch(config.alphabet_size);
  ArithmeticDecoder decoder(bytes);
  if (config.schedule == Schedule::kRaster) {
    for (const Position& pos :
         RasterOrder(rect.width, rect.height, config.depth)) {
      const ProbabilityCuboid probs = model.Forward(out.cuboid);
      ++out.forward_passes;
      const uint32_t s =
          decoder.Decode(StepPmf(probs, pos, capture, scratch, out));
      out.cuboid.set(pos, static_cast<uint16_t>(s));
    }
  } else {
    for (const SlopeBlock& block :
         SlopeBlocks(rect.width, rect.height, config.depth)) {
      const ProbabilityCuboid probs = model.Forward(out.cuboid);
      ++out.forward_passes;
      for (const Position& pos : block.positions) {
        const uint32_t s =
            decoder.Decode(StepPmf(probs, pos, capture, scratch, out));
        out.cuboid.set(pos, static_cast<uint16_t>(s));
      }
    }
  }
  decoder.Finish();
  return out;
}

CodecStats FoldStats(std::vector<TileOutput>& tiles) {
  CodecStats stats;
  stats.tiles = tiles.size();
  stats.pmf_hash = kFnvOffset;
  for (TileOutput& t : tiles) {
    stats.forward_passes += t.forward_passes;
    HashU64(stats.pmf_hash, t.pmf_hash);
    stats.probabilities.insert(stats.probabilities.end(),
                               t.probabilities.begin(), t.probabilities.end());
  }
  return stats;
}

uint32_t CheckedU32(size_t v, const char* what) {
  if (v > UINT32_MAX) throw Error(std::string(what) + " exceeds 32 bits");
  return static_cast<uint32_t>(v);
}

DecodeResult DecodeWithSchedule(std::span<const uint8_t> stream,
                                const ContextModel& model,
                                const CodecOptions& options,
                                Schedule expected) {
  ByteReader in(stream);
  const CodecHeader header = CodecHeader::Read(in);
  const ModelConfig& config = model.config();
  if (header.schedule != expected) {
    throw Error(std::string("stream uses the ") +
                ScheduleName(header.schedule) + " schedule, decoder is " +
                ScheduleName(expected));
  }
  if (header.schedule != config.schedule) {
    throw Error("stream schedule does not match the model");
  }
  if (header.depth != config.depth ||
      header.alphabet_size != config.alphabet_size) {
    throw Error("stream depth or alphabet size does not match the model");
  }
  if (header.model_hash != ModelHash(model)) {
    throw Error("stream was encoded with a different model");
  }
  if (header.width == 0 || header.height == 0) {
    throw Error("stream has zero extent");
  }
  if (header.payload_length != in.remaining()) {
    throw Error(in.remaining() < header.payload_length
                    ? "truncated stream"
                    : "trailing bytes after payload");
  }
  const std::vector<TileRect> rects =
      TileGrid(header.width, header.height, header.tile_size);
  std::vector<std::span<const uint8_t>> payloads;
  payloads.reserve(rects.size());
  for (size_t t = 0; t < rects.size(); ++t) {
    const uint32_t length = in.GetU32();
    if (length > in.remaining()) throw Error("truncated stream");
    payloads.push_back(stream.subspan(in.position(), length));
    in.GetBytes(length);
  }
  if (in.remaining() != 0) throw Error("trailing bytes after payload");

  std::vector<TileOutput> tiles(rects.size());
  ParallelFor(rects.size(), [&](size_t t) {
    tiles[t] =
        DecodeTile(payloads[t], rects[t], model, options.capture_probabilities);
  });
  DecodeResult result;
  result.cuboid = SymbolCuboid(header.width, header.height, header.depth,
                               header.alphabet_size);
  for (size_t t = 0; t < rects.size(); ++t) {
    result.cuboid.Paste(tiles[t].cuboid, rects[t].x0, rects[t].y0);
  }
  result.stats = FoldStats(tiles);
  return result;
}

}  // namespace

void CodecHeader::Write(ByteWriter& out) const {
  out.PutBytes(std::span<const uint8_t>(
      reinterpret_cast<const uint8_t*>(kMagic), sizeof(kMagic)));
  out.PutU32(kVersion);
  out.PutU32(static_cast<uint32_t>(schedule));
  out.PutU32(width);
  out.PutU32(height);
  out.PutU32(depth);
  out.PutU32(alphabet_size);
  out.PutU32(tile_size);
  out.PutU64(model_hash);
  out.PutU32(payload_length);
}

CodecHeader CodecHeader::Read(ByteReader& in) {
  if (in.remaining() < kSize) throw Error("truncated stream header");
  const std::span<const uint8_t> magic = in.GetBytes(sizeof(kMagic));
  if (!std::equal(magic.begin(), magic.end(), kMagic)) {
    throw Error("not a trimcode stream (bad magic)");
  }
  const uint32_t version = in.GetU32();
  if (version != kVersion) {
    throw Error("unsupported stream version " + std::to_string(version));
  }
  const uint32_t schedule = in.GetU32();
  if (schedule > 1) throw Error("unknown schedule tag in stream");
  CodecHeader h;
  h.schedule = static_cast<Schedule>(schedule);
  h.width = in.GetU32();
  h.height = in.GetU32();
  h.depth = in.GetU32();
  h.alphabet_size = in.GetU32();
  h.tile_size = in.GetU32();
  h.model_hash = in.GetU64();
  h.payload_length = in.GetU32();
  return h;
}

CodecHeader PeekHeader(std::span<const uint8_t> stream) {
  ByteReader in(stream);
  return CodecHeader::Read(in);
}

std::vector<TileRect> TileGrid(size_t width, size_t height,
                               uint32_t tile_size) {
  if (tile_size == 0) return {TileRect{0, 0, width, height}};
  std::vector<TileRect> rects;
  for (size_t y0 = 0; y0 < height; y0 += tile_size) {
    for (size_t x0 = 0; x0 < width; x0 += tile_size) {
      rects.push_back({x0, y0, std::min<size_t>(tile_size, width - x0),
                       std::min<size_t>(tile_size, height - y0)});
    }
  }
  return rects;
}

QuantizedPmf CoderPmf(std::span<const double> probabilities) {
  std::vector<double> p(probabilities.begin(), probabilities.end());
  double sum = 0.0;
  for (double& v : p) {
    if (!(v >= 0.0) || !(v <= 1.0)) throw Error("probability outside [0, 1]");
    v = std::max(v, kProbabilityFloor);
    sum += v;
  }
  for (double& v : p) v /= sum;
  return QuantizedPmf::FromProbabilities(p);
}

EncodeResult Encode(const SymbolCuboid& x, const ContextModel& model,
                    Schedule schedule, uint32_t tile_size,
                    const CodecOptions& options) {
  const ModelConfig& config = model.config();
  if (schedule != config.schedule) {
    throw Error("requested schedule does not match the model");
  }
  if (x.depth() != config.depth || x.alphabet_size() != config.alphabet_size) {
    throw Error("cuboid depth or alphabet size does not match the model");
  }
  if (x.size() == 0) throw Error("cannot encode an empty cuboid");
  const std::vector<TileRect> rects = TileGrid(x.width(), x.height(), tile_size);
  std::vector<TileOutput> tiles(rects.size());
  ParallelFor(rects.size(), [&](size_t t) {
    const TileRect& r = rects[t];
    tiles[t] = EncodeTile(x.Crop(r.x0, r.y0, r.width, r.height), model,
                          schedule, options.capture_probabilities);
  });

  ByteWriter payload;
  for (const TileOutput& t : tiles) {
    payload.PutU32(CheckedU32(t.bytes.size(), "tile payload"));
    payload.PutBytes(t.bytes);
  }
  CodecHeader header;
  header.schedule = schedule;
  header.width = CheckedU32(x.width(), "width");
  header.height = CheckedU32(x.height(), "height");
  header.depth = config.depth;
  header.alphabet_size = config.alphabet_size;
  header.tile_size = tile_size;
  header.model_hash = ModelHash(model);
  header.payload_length = CheckedU32(payload.bytes().size(), "payload");

  ByteWriter out;
  header.Write(out);
  out.PutBytes(payload.bytes());
  EncodeResult result;
  result.bytes = out.Release();
  result.stats = FoldStats(tiles);
  return result;
}

DecodeResult DecodeRaster(std::span<const uint8_t> stream,
                          const ContextModel& model,
                          const CodecOptions& options) {
  return DecodeWithSchedule(stream, model, options, Schedule::kRaster);
}

DecodeResult DecodeSlope(std::span<const uint8_t> stream,
                         const ContextModel& model,
                         const CodecOptions& options) {
  return DecodeWithSchedule(stream, model, options, Schedule::kSlope);
}

DecodeResult Decode(std::span<const uint8_t> stream, const ContextModel& model,
                    const CodecOptions& options) {
  return DecodeWithSchedule(stream, model, options,
                            PeekHeader(stream).schedule);
}

}  // namespace trimcode
