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

#ifndef TRIMCODE_TRAINER_H_
#define TRIMCODE_TRAINER_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "trimcode/context_model.h"
#include "trimcode/tensor.h"

namespace trimcode {

// Learning rates tried in order; each one is kept until the objective stops
// decreasing.
inline constexpr double kLearningRateLadder[] = {3e-4, 1e-4, 3.33e-5,
                                                 1.11e-5};

// ADAM with bias correction.
class AdamOptimizer {
 public:
  static constexpr double kBeta1 = 0.9;
  static constexpr double kBeta2 = 0.999;
  static constexpr double kEpsilon = 1e-8;

  explicit AdamOptimizer(const std::vector<const Tensor*>& params);

  void Step(const std::vector<Tensor*>& params, std::span<const Tensor> grads,
            double learning_rate);

  size_t steps() const { return steps_; }
  const std::vector<Tensor>& first_moments() const { return first_; }
  const std::vector<Tensor>& second_moments() const { return second_; }

 private:
  size_t steps_ = 0;
  std::vector<Tensor> first_;
  std::vector<Tensor> second_;
};

struct TrainConfig {
  size_t batch_size = 4;
  size_t max_steps = 5000;
  // Mean training loss is evaluated every `eval_interval` steps.
  size_t eval_interval = 200;
  // Evaluations without improvement before moving down the ladder.
  size_t patience = 3;
  // An evaluation improves if it beats the best so far by this fraction.
  double min_relative_improvement = 1e-3;
  uint64_t seed = 1;

  void Validate() const;
};

struct TrainRecord {
  size_t step = 0;
  double bits_per_symbol = 0.0;  // mean over the evaluation window
  double learning_rate = 0.0;    // rate used during the window
  double best_bits_per_symbol = 0.0;
};

struct TrainState {
  explicit TrainState(const ContextModel& model, uint64_t seed)
      : optimizer(model.Parameters()), rng(seed) {}

  AdamOptimizer optimizer;
  Rng rng;
  size_t ladder_index = 0;
  size_t plateau_count = 0;
  double best = std::numeric_limits<double>::infinity();

  double learning_rate() const { return kLearningRateLadder[ladder_index]; }
};

struct TrainResult {
  std::vector<TrainRecord> history;
  size_t steps = 0;
  // True when the last ladder rate plateaued, false when max_steps hit.
  bool plateaued = false;
};

// Minibatch ADAM over `corpus` (sampled uniformly with replacement).
TrainResult Train(ContextModel& model, std::span<const SymbolCuboid> corpus,
                  const TrainConfig& config,
                  const std::function<void(const TrainRecord&)>& on_record = {});

// Mean bits per symbol of `model` over `cuboids`.
double EvaluateBitsPerSymbol(const ContextModel& model,
                             std::span<const SymbolCuboid> cuboids);

}  // namespace trimcode

#endif  // TRIMCODE_TRAINER_H_
