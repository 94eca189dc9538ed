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

#include "trimcode/model_io.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>

#include "trimcode/byte_io.h"
#include "trimcode/error.h"

namespace trimcode {

std::vector<uint8_t> SaveModel(const ContextModel& model) {
  ByteWriter out;
  out.PutBytes({reinterpret_cast<const uint8_t*>(kModelMagic), 8});
  const ModelConfig& c = model.config();
  out.PutU32(c.alphabet_size);
  out.PutU32(c.groups);
  out.PutU32(c.depth);
  out.PutU32(static_cast<uint32_t>(c.schedule));
  out.PutU32(c.residual_blocks);
  for (const Tensor* p : model.Parameters()) {
    for (double v : p->values()) out.PutF64(v);
  }
  return out.Release();
}

ContextModel LoadModel(std::span<const uint8_t> bytes) {
  ByteReader in(bytes);
  const auto magic = in.GetBytes(8);
  if (!std::equal(magic.begin(), magic.end(),
                  reinterpret_cast<const uint8_t*>(kModelMagic))) {
    throw Error("not a model file (bad magic)");
  }
  ModelConfig config;
  config.alphabet_size = in.GetU32();
  config.groups = in.GetU32();
  config.depth = in.GetU32();
  const uint32_t schedule = in.GetU32();
  if (schedule > 1) throw Error("model file has an unknown schedule tag");
  config.schedule = static_cast<Schedule>(schedule);
  config.residual_blocks = in.GetU32();
  // Bound the allocation before building layers from untrusted sizes.
  if (config.groups > 4096 || config.depth > 4096 ||
      config.residual_blocks > 4096) {
    throw Error("model file config is out of range");
  }
  config.Validate();

  ContextModel model(config);
  size_t expected = 0;
  for (const Tensor* p : std::as_const(model).Parameters()) expected += p->size();
  if (in.remaining() != expected * 8) {
    throw Error("model file parameter block has " +
                std::to_string(in.remaining()) + " bytes, expected " +
                std::to_string(expected * 8));
  }
  for (Tensor* p : model.Parameters()) {
    for (double& v : p->values()) {
      v = in.GetF64();
      if (!std::isfinite(v)) throw Error("model file holds a non-finite parameter");
    }
  }
  return model;
}

std::vector<uint8_t> ReadFileBytes(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open '" + path + "' for reading");
  return std::vector<uint8_t>(std::istreambuf_iterator<char>(f),
                              std::istreambuf_iterator<char>());
}

void WriteFileBytes(const std::string& path, std::span<const uint8_t> bytes) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error("cannot open '" + path + "' for writing");
  f.write(reinterpret_cast<const char*>(bytes.data()),
          static_cast<std::streamsize>(bytes.size()));
  if (!f) throw Error("failed writing '" + path + "'");
}

void WriteModelFile(const ContextModel& model, const std::string& path) {
  WriteFileBytes(path, SaveModel(model));
}

ContextModel ReadModelFile(const std::string& path) {
  return LoadModel(ReadFileBytes(path));
}

uint64_t Fnv1a64(std::span<const uint8_t> bytes) {
  uint64_t hash = 0xcbf29ce484222325ULL;
  for (uint8_t b : bytes) {
    hash ^= b;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

uint64_t ModelHash(const ContextModel& model) {
  return Fnv1a64(SaveModel(model));
}

}  // namespace trimcode
