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

#ifndef TRIMCODE_MODEL_IO_H_
#define TRIMCODE_MODEL_IO_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "trimcode/context_model.h"

namespace trimcode {

// Model file layout, all fields little-endian:
//
//   "TCAEMDL1"                      8 bytes
//   m, g, C, schedule, blocks       5 x uint32 (schedule: 0 raster, 1 slope)
//   parameters                      float64 each
//
// Parameters follow ContextModel::Parameters() order (per layer: weights,
// then bias), each tensor in row-major order. Masked weights are stored.
inline constexpr char kModelMagic[8] = {'T', 'C', 'A', 'E', 'M', 'D', 'L', '1'};

std::vector<uint8_t> SaveModel(const ContextModel& model);
ContextModel LoadModel(std::span<const uint8_t> bytes);

void WriteModelFile(const ContextModel& model, const std::string& path);
ContextModel ReadModelFile(const std::string& path);

uint64_t Fnv1a64(std::span<const uint8_t> bytes);
// FNV-1a of the serialized model; identifies a model inside a container.
uint64_t ModelHash(const ContextModel& model);

std::vector<uint8_t> ReadFileBytes(const std::string& path);
void WriteFileBytes(const std::string& path, std::span<const uint8_t> bytes);

}  // namespace trimcode

#endif  // TRIMCODE_MODEL_IO_H_
