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

#include "trimcode/trainer.h"

#include <cmath>
#include <iterator>
#include <string>

#include "trimcode/error.h"

namespace trimcode {

AdamOptimizer::AdamOptimizer(const std::vector<const Tensor*>& params) {
  for (const Tensor* p : params) {
    first_.emplace_back(p->shape());
    second_.emplace_back(p->shape());
  }
}

void AdamOptimizer::Step(const std::vector<Tensor*>& params,
                         std::span<const Tensor> grads, double learning_rate) {
  if (params.size() != first_.size() || grads.size() != first_.size()) {
    throw Error("ADAM parameter/gradient count mismatch");
  }
  ++steps_;
  const double correction1 = 1.0 - std::pow(kBeta1, static_cast<double>(steps_));
  const double correction2 = 1.0 - std::pow(kBeta2, static_cast<double>(steps_));
  for (size_t p = 0; p < params.size(); ++p) {
    Tensor& param = *params[p];
    const Tensor& grad = grads[p];
    if (param.shape() != first_[p].shape() || grad.shape() != param.shape()) {
      throw Error("ADAM shape mismatch at parameter " + std::to_string(p));
    }
    Tensor& m = first_[p];
    Tensor& v = second_[p];
    for (size_t e = 0; e < param.size(); ++e) {
      const double g = grad[e];
      m[e] = kBeta1 * m[e] + (1.0 - kBeta1) * g;
      v[e] = kBeta2 * v[e] + (1.0 - kBeta2) * g * g;
      const double m_hat = m[e] / correction1;
      const double v_hat = v[e] / correction2;
      param[e] -= learning_rate * m_hat / (std::sqrt(v_hat) + kEpsilon);
    }
  }
}

void TrainConfig::Validate() const {
  if (batch_size == 0 || max_steps == 0 || eval_interval == 0 ||
      patience == 0) {
    throw Error("training batch size, steps, eval interval and patience "
                "must be positive");
  }
  if (!(min_relative_improvement >= 0.0)) {
    throw Error("minimum relative improvement must be non-negative");
  }
}

TrainResult Train(ContextModel& model, std::span<const SymbolCuboid> corpus,
                  const TrainConfig& config,
                  const std::function<void(const TrainRecord&)>& on_record) {
  config.Validate();
  if (corpus.empty()) throw Error("training corpus is empty");
  for (const SymbolCuboid& x : corpus) {
    if (x.depth() != model.config().depth ||
        x.alphabet_size() != model.config().alphabet_size) {
      throw Error("training corpus cuboids must match the model depth and "
                  "alphabet size");
    }
  }

  TrainState state(model, config.seed);
  TrainResult result;
  const auto params = model.Parameters();
  std::vector<SymbolCuboid> batch(config.batch_size);
  double window_bits = 0.0;
  size_t window_steps = 0;

  for (size_t step = 1; step <= config.max_steps; ++step) {
    for (auto& sample : batch) {
      sample = corpus[state.rng.NextBelow(corpus.size())];
    }
    const LossAndGradients lg = ComputeBatchLossAndGradients(model, batch);
    state.optimizer.Step(params, lg.gradients.tensors, state.learning_rate());
    window_bits += lg.bits / static_cast<double>(lg.symbols);
    ++window_steps;
    result.steps = step;

    if (step % config.eval_interval != 0) continue;
    const double mean = window_bits / static_cast<double>(window_steps);
    window_bits = 0.0;
    window_steps = 0;
    if (mean < state.best * (1.0 - config.min_relative_improvement)) {
      state.best = mean;
      state.plateau_count = 0;
    } else {
      ++state.plateau_count;
    }
    const TrainRecord record{step, mean, state.learning_rate(), state.best};
    result.history.push_back(record);
    if (on_record) on_record(record);

    if (state.plateau_count >= config.patience) {
      if (state.ladder_index + 1 < std::size(kLearningRateLadder)) {
        ++state.ladder_index;
        state.plateau_count = 0;
      } else {
        result.plateaued = true;
        break;
      }
    }
  }
  return result;
}

double EvaluateBitsPerSymbol(const ContextModel& model,
                             std::span<const SymbolCuboid> cuboids) {
  if (cuboids.empty()) throw Error("nothing to evaluate");
  double bits = 0.0;
  size_t symbols = 0;
  for (const SymbolCuboid& x : cuboids) {
    bits += CodeLengthBits(model.Forward(x), x);
    symbols += x.size();
  }
  return bits / static_cast<double>(symbols);
}

}  // namespace trimcode
