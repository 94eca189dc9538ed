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

#ifndef TRIMCODE_CONTEXT_MODEL_H_
#define TRIMCODE_CONTEXT_MODEL_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "trimcode/symbol_cuboid.h"
#include "trimcode/tensor.h"
#include "trimcode/trim_conv.h"

namespace trimcode {

// Probabilities are clamped below by this before taking logs and before
// quantizing to a coder PMF.
inline constexpr double kProbabilityFloor = 0x1.0p-16;

struct ModelConfig {
  uint32_t alphabet_size = 2;  // m
  uint32_t groups = 8;         // g
  uint32_t depth = 8;          // C
  Schedule schedule = Schedule::kRaster;
  uint32_t residual_blocks = 4;

  void Validate() const;
  friend bool operator==(const ModelConfig&, const ModelConfig&) = default;
};

// Per-position m-way distribution, shape {m, C, H, W}.
class ProbabilityCuboid {
 public:
  ProbabilityCuboid() = default;
  explicit ProbabilityCuboid(Tensor values) : values_(std::move(values)) {}

  const Tensor& values() const { return values_; }
  size_t alphabet_size() const { return values_.dim(0); }
  size_t depth() const { return values_.dim(1); }
  size_t height() const { return values_.dim(2); }
  size_t width() const { return values_.dim(3); }

  double at(size_t symbol, const Position& pos) const;
  // Distribution at `pos` written to `out` (size m).
  void Pmf(const Position& pos, std::span<double> out) const;
  std::vector<double> Pmf(const Position& pos) const;

 private:
  Tensor values_;
};

// Trimmed-convolution probability predictor:
//
//   conv(1 -> g, input mask), ReLU
//   conv(g -> g, hidden mask), ReLU
//   residual_blocks x [x + ReLU(conv(ReLU(conv(x))))], hidden masks
//   conv(g -> m, hidden mask), softmax over m
//
// Every spatial kernel is 5x5 and spans the full depth.
class ContextModel {
 public:
  // All parameters zero: the model predicts the uniform distribution.
  explicit ContextModel(const ModelConfig& config);

  // Glorot-uniform hidden weights, hidden biases 0.1, zero final layer.
  static ContextModel Initialized(const ModelConfig& config, Rng& rng);

  const ModelConfig& config() const { return config_; }

  // Layer order: conv0, conv1, (block conv a, block conv b) per residual
  // block, final conv. This is also the serialization order.
  std::vector<TrimmedConvLayer>& layers() { return layers_; }
  const std::vector<TrimmedConvLayer>& layers() const { return layers_; }
  TrimmedConvLayer& final_layer() { return layers_.back(); }

  // Weights then bias for every layer, in layer order.
  std::vector<Tensor*> Parameters();
  std::vector<const Tensor*> Parameters() const;
  size_t ParameterCount() const;

  ProbabilityCuboid Forward(const SymbolCuboid& x) const;

  friend bool operator==(const ContextModel&, const ContextModel&) = default;

 private:
  ModelConfig config_;
  std::vector<TrimmedConvLayer> layers_;
};

// Input embedding: symbol s -> s / (m - 1), shape {1, C, H, W}.
Tensor EmbedSymbols(const SymbolCuboid& x);

// Total code length in bits: sum over positions of -log2 max(p_true, floor).
double CodeLengthBits(const ProbabilityCuboid& probs, const SymbolCuboid& x);

// Uncompressed size C*H*W*log2(m) over the coded size in bits.
double CompressionRatio(double loss_bits, size_t width, size_t height,
                        size_t depth, uint32_t alphabet_size);

// Gradients in the order of ContextModel::Parameters().
struct ModelGradients {
  std::vector<Tensor> tensors;

  void Add(const ModelGradients& other);
};

struct LossAndGradients {
  double bits = 0.0;
  size_t symbols = 0;
  ModelGradients gradients;
};

// Exact gradient of CodeLengthBits(Forward(x), x) with respect to every
// parameter. Softmax and the log loss are differentiated jointly:
// d bits / d logit = (p - onehot) / ln 2, or zero where p_true is clamped.
LossAndGradients ComputeLossAndGradients(const ContextModel& model,
                                         const SymbolCuboid& x);

// Sum of per-sample losses and gradients, accumulated in sample order.
LossAndGradients ComputeBatchLossAndGradients(
    const ContextModel& model, std::span<const SymbolCuboid> batch);

}  // namespace trimcode

#endif  // TRIMCODE_CONTEXT_MODEL_H_
