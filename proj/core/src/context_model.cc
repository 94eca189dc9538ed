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

#include "trimcode/context_model.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "trimcode/error.h"
#include "trimcode/parallel.h"

namespace trimcode {

void ModelConfig::Validate() const {
  if (alphabet_size < 2 || alphabet_size > 65536) {
    throw Error("model alphabet size must be in [2, 65536]");
  }
  if (groups == 0) throw Error("model group count must be positive");
  if (depth == 0) throw Error("model depth must be positive");
  if (schedule != Schedule::kRaster && schedule != Schedule::kSlope) {
    throw Error("model schedule tag is invalid");
  }
}

double ProbabilityCuboid::at(size_t symbol, const Position& pos) const {
  return values_[((symbol * depth() + pos.k) * height() + pos.j) * width() +
                 pos.i];
}

void ProbabilityCuboid::Pmf(const Position& pos, std::span<double> out) const {
  const size_t stride = depth() * height() * width();
  const size_t base = (pos.k * height() + pos.j) * width() + pos.i;
  for (size_t t = 0; t < out.size(); ++t) out[t] = values_[t * stride + base];
}

std::vector<double> ProbabilityCuboid::Pmf(const Position& pos) const {
  std::vector<double> pmf(alphabet_size());
  Pmf(pos, pmf);
  return pmf;
}

ContextModel::ContextModel(const ModelConfig& config) : config_(config) {
  config_.Validate();
  const size_t g = config.groups;
  const size_t c = config.depth;
  const MaskMode input{config.schedule, LayerKind::kInput};
  const MaskMode hidden{config.schedule, LayerKind::kHidden};
  layers_.reserve(3 + 2 * config.residual_blocks);
  layers_.emplace_back(1, g, c, input);
  layers_.emplace_back(g, g, c, hidden);
  for (uint32_t b = 0; b < config.residual_blocks; ++b) {
    layers_.emplace_back(g, g, c, hidden);
    layers_.emplace_back(g, g, c, hidden);
  }
  layers_.emplace_back(g, config.alphabet_size, c, hidden);
}

ContextModel ContextModel::Initialized(const ModelConfig& config, Rng& rng) {
  ContextModel model(config);
  for (size_t l = 0; l + 1 < model.layers_.size(); ++l) {
    model.layers_[l].InitGlorot(rng);
    model.layers_[l].bias().Fill(0.1);
  }
  model.layers_.back().InitZero();
  return model;
}

std::vector<Tensor*> ContextModel::Parameters() {
  std::vector<Tensor*> params;
  for (auto& layer : layers_) {
    params.push_back(&layer.weights());
    params.push_back(&layer.bias());
  }
  return params;
}

std::vector<const Tensor*> ContextModel::Parameters() const {
  std::vector<const Tensor*> params;
  for (const auto& layer : layers_) {
    params.push_back(&layer.weights());
    params.push_back(&layer.bias());
  }
  return params;
}

size_t ContextModel::ParameterCount() const {
  size_t n = 0;
  for (const Tensor* p : Parameters()) n += p->size();
  return n;
}

Tensor EmbedSymbols(const SymbolCuboid& x) {
  Tensor out({1, x.depth(), x.height(), x.width()});
  const double scale = 1.0 / static_cast<double>(x.alphabet_size() - 1);
  const auto symbols = x.symbols();
  for (size_t e = 0; e < symbols.size(); ++e) out[e] = symbols[e] * scale;
  return out;
}

namespace {

void CheckCompatible(const ModelConfig& config, const SymbolCuboid& x) {
  if (x.depth() != config.depth) {
    throw Error("cuboid depth " + std::to_string(x.depth()) +
                " does not match model depth " + std::to_string(config.depth));
  }
  if (x.alphabet_size() != config.alphabet_size) {
    throw Error("cuboid alphabet size " + std::to_string(x.alphabet_size()) +
                " does not match model alphabet size " +
                std::to_string(config.alphabet_size));
  }
}

void ReluInPlace(Tensor& t) {
  for (double& v : t.values()) v = v > 0.0 ? v : 0.0;
}

// Zeroes gradient entries where the post-ReLU activation is not positive.
void MaskByActivation(Tensor& grad, const Tensor& activation) {
  for (size_t e = 0; e < grad.size(); ++e) {
    if (!(activation[e] > 0.0)) grad[e] = 0.0;
  }
}

void AddInPlace(Tensor& acc, const Tensor& other) {
  for (size_t e = 0; e < acc.size(); ++e) acc[e] += other[e];
}

// Softmax over axis 0 of a {m, C, H, W} tensor.
Tensor Softmax(const Tensor& logits) {
  const size_t m = logits.dim(0);
  const size_t stride = logits.size() / m;
  Tensor probs(logits.shape());
  for (size_t e = 0; e < stride; ++e) {
    double peak = logits[e];
    for (size_t t = 1; t < m; ++t) peak = std::max(peak, logits[t * stride + e]);
    double total = 0.0;
    for (size_t t = 0; t < m; ++t) {
      const double v = std::exp(logits[t * stride + e] - peak);
      probs[t * stride + e] = v;
      total += v;
    }
    const double inv = 1.0 / total;
    for (size_t t = 0; t < m; ++t) probs[t * stride + e] *= inv;
  }
  return probs;
}

struct ForwardTrace {
  // activations[l] is the input of layers[l]; the last entry is the softmax.
  std::vector<Tensor> inputs;
  // Post-ReLU output of each residual block's inner convs.
  std::vector<Tensor> block_inner;
  Tensor probs;
};

ForwardTrace RunForward(const ContextModel& model, const SymbolCuboid& x) {
  const auto& layers = model.layers();
  const uint32_t blocks = model.config().residual_blocks;
  ForwardTrace trace;
  trace.inputs.reserve(layers.size());

  trace.inputs.push_back(EmbedSymbols(x));
  Tensor h = layers[0].Forward(trace.inputs.back());
  ReluInPlace(h);
  trace.inputs.push_back(h);
  h = layers[1].Forward(h);
  ReluInPlace(h);
  for (uint32_t b = 0; b < blocks; ++b) {
    const TrimmedConvLayer& conv_a = layers[2 + 2 * b];
    const TrimmedConvLayer& conv_b = layers[3 + 2 * b];
    trace.inputs.push_back(h);  // block input, fed to conv_a
    Tensor a = conv_a.Forward(h);
    ReluInPlace(a);
    trace.inputs.push_back(a);  // fed to conv_b
    Tensor c = conv_b.Forward(a);
    ReluInPlace(c);
    AddInPlace(h, c);
    trace.block_inner.push_back(std::move(c));
  }
  trace.inputs.push_back(h);
  trace.probs = Softmax(layers.back().Forward(h));
  return trace;
}

}  // namespace

ProbabilityCuboid ContextModel::Forward(const SymbolCuboid& x) const {
  CheckCompatible(config_, x);
  return ProbabilityCuboid(RunForward(*this, x).probs);
}

double CodeLengthBits(const ProbabilityCuboid& probs, const SymbolCuboid& x) {
  if (probs.alphabet_size() != x.alphabet_size() ||
      probs.depth() != x.depth() || probs.height() != x.height() ||
      probs.width() != x.width()) {
    throw Error("probability cuboid does not match symbol cuboid");
  }
  const size_t stride = x.size();
  const auto symbols = x.symbols();
  double bits = 0.0;
  for (size_t e = 0; e < stride; ++e) {
    const double p = probs.values()[symbols[e] * stride + e];
    bits -= std::log2(std::max(p, kProbabilityFloor));
  }
  return bits;
}

double CompressionRatio(double loss_bits, size_t width, size_t height,
                        size_t depth, uint32_t alphabet_size) {
  if (!(loss_bits > 0.0)) throw Error("compression ratio needs positive bits");
  return static_cast<double>(depth * height * width) *
         std::log2(static_cast<double>(alphabet_size)) / loss_bits;
}

void ModelGradients::Add(const ModelGradients& other) {
  if (other.tensors.size() != tensors.size()) {
    throw Error("gradient sets differ in length");
  }
  for (size_t p = 0; p < tensors.size(); ++p) {
    AddInPlace(tensors[p], other.tensors[p]);
  }
}

LossAndGradients ComputeLossAndGradients(const ContextModel& model,
                                         const SymbolCuboid& x) {
  CheckCompatible(model.config(), x);
  const auto& layers = model.layers();
  const uint32_t blocks = model.config().residual_blocks;
  const ForwardTrace trace = RunForward(model, x);

  LossAndGradients result;
  result.symbols = x.size();
  result.bits = CodeLengthBits(ProbabilityCuboid(trace.probs), x);
  result.gradients.tensors.resize(2 * layers.size());
  auto store = [&](size_t layer, TrimmedConvLayer::Gradients& g) {
    result.gradients.tensors[2 * layer] = std::move(g.weights);
    result.gradients.tensors[2 * layer + 1] = std::move(g.bias);
  };

  // d bits / d logits.
  const size_t m = x.alphabet_size();
  const size_t stride = x.size();
  const auto symbols = x.symbols();
  Tensor grad_logits(trace.probs.shape());
  const double inv_ln2 = 1.0 / std::numbers::ln2;
  for (size_t e = 0; e < stride; ++e) {
    const size_t truth = symbols[e];
    if (trace.probs[truth * stride + e] < kProbabilityFloor) continue;
    for (size_t t = 0; t < m; ++t) {
      const double onehot = t == truth ? 1.0 : 0.0;
      grad_logits[t * stride + e] =
          (trace.probs[t * stride + e] - onehot) * inv_ln2;
    }
  }

  size_t input = trace.inputs.size() - 1;
  auto g = layers.back().Backward(trace.inputs[input], grad_logits);
  Tensor grad_h = std::move(g.x);
  store(layers.size() - 1, g);

  for (uint32_t bi = blocks; bi-- > 0;) {
    const size_t la = 2 + 2 * bi;
    const size_t lb = 3 + 2 * bi;
    // h_out = h_in + relu(conv_b(relu(conv_a(h_in)))).
    Tensor grad_c = grad_h;
    MaskByActivation(grad_c, trace.block_inner[bi]);
    auto gb = layers[lb].Backward(trace.inputs[lb], grad_c);
    MaskByActivation(gb.x, trace.inputs[lb]);
    auto ga = layers[la].Backward(trace.inputs[la], gb.x);
    AddInPlace(grad_h, ga.x);
    store(lb, gb);
    store(la, ga);
  }

  // inputs[2] (or the final input when there are no blocks) is relu(conv1).
  const Tensor& h1 = trace.inputs[2];
  MaskByActivation(grad_h, h1);
  auto g1 = layers[1].Backward(trace.inputs[1], grad_h);
  MaskByActivation(g1.x, trace.inputs[1]);
  auto g0 = layers[0].Backward(trace.inputs[0], g1.x);
  store(1, g1);
  store(0, g0);
  return result;
}

LossAndGradients ComputeBatchLossAndGradients(
    const ContextModel& model, std::span<const SymbolCuboid> batch) {
  if (batch.empty()) throw Error("empty batch");
  std::vector<LossAndGradients> parts(batch.size());
  ParallelFor(batch.size(), [&](size_t s) {
    parts[s] = ComputeLossAndGradients(model, batch[s]);
  });
  LossAndGradients total = std::move(parts[0]);
  for (size_t s = 1; s < parts.size(); ++s) {
    total.bits += parts[s].bits;
    total.symbols += parts[s].symbols;
    total.gradients.Add(parts[s].gradients);
  }
  return total;
}

}  // namespace trimcode
