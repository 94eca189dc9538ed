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

#ifndef TRIMCODE_PGM_H_
#define TRIMCODE_PGM_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "trimcode/bitplanes.h"

namespace trimcode {

// Binary PGM (P5) with maxval 255. Comments in the header are skipped.
GrayImage ParsePgm(std::span<const uint8_t> bytes);
// Canonical form: "P5\n<W> <H>\n255\n" followed by the raster.
std::vector<uint8_t> EncodePgm(const GrayImage& image);

GrayImage ReadPgm(const std::string& path);
void WritePgm(const GrayImage& image, const std::string& path);

}  // namespace trimcode

#endif  // TRIMCODE_PGM_H_
