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

#ifndef TRIMCODE_CORPUS_H_
#define TRIMCODE_CORPUS_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "trimcode/bitplanes.h"
#include "trimcode/symbol_cuboid.h"

namespace trimcode {

// Synthetic image families:
//   kConstant       every pixel 0
//   kIidUniform     pixels independent and uniform on [0, 255]
//   kMarkovTexture  binary 0/255 field where each pixel copies its left
//                   neighbour (the pixel above, in column 0) and is flipped
//                   with probability flip_probability; pixel (0, 0) is a
//                   fair coin.
enum class CorpusKind { kConstant, kIidUniform, kMarkovTexture };

const char* CorpusKindName(CorpusKind kind);
CorpusKind ParseCorpusKind(const std::string& name);

struct CorpusSpec {
  CorpusKind kind = CorpusKind::kConstant;
  size_t count = 1;
  size_t width = 32;
  size_t height = 32;
  double flip_probability = 0.1;
  uint64_t seed = 1;
};

std::vector<GrayImage> GenerateCorpus(const CorpusSpec& spec);

std::vector<SymbolCuboid> ToBitplaneCorpus(std::span<const GrayImage> images);

// Empirical order-0 entropy in bits per symbol over all symbols.
double Order0EntropyBits(std::span<const SymbolCuboid> corpus);

// Binary entropy H(p) in bits.
double BinaryEntropy(double p);

}  // namespace trimcode

#endif  // TRIMCODE_CORPUS_H_
