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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "test_support.h"
#include "trimcode/error.h"

namespace trimcode {
namespace {

using testing::RandomCuboid;
using testing::RandomModel;

ModelConfig SmallConfig(Schedule schedule, uint32_t m = 2, uint32_t depth = 2) {
  ModelConfig c;
  c.alphabet_size = m;
  c.groups = 2;
  c.depth = depth;
  c.schedule = schedule;
  c.residual_blocks = 1;
  return c;
}

std::vector<Position> AllPositions(const SymbolCuboid& x) {
  std::vector<Position> out;
  for (int k = 0; k < static_cast<int>(x.depth()); ++k) {
    for (int j = 0; j < static_cast<int>(x.height()); ++j) {
      for (int i = 0; i < static_cast<int>(x.width()); ++i) {
        out.push_back({i, j, k});
      }
    }
  }
  return out;
}

class ContextModelScheduleTest : public ::testing::TestWithParam<Schedule> {};

TEST_P(ContextModelScheduleTest, ZeroFinalLayerPredictsUniform) {
  Rng rng(1);
  for (uint32_t m : {2u, 4u}) {
    const ContextModel model =
        ContextModel::Initialized(SmallConfig(GetParam(), m, 3), rng);
    const SymbolCuboid x = RandomCuboid(5, 4, 3, m, rng);
    const ProbabilityCuboid p = model.Forward(x);
    for (double v : p.values().values()) EXPECT_EQ(v, 1.0 / m);
  }
}

TEST_P(ContextModelScheduleTest, DistributionsNormalized) {
  Rng rng(2);
  const ContextModel model = RandomModel(SmallConfig(GetParam(), 4, 3), rng);
  const SymbolCuboid x = RandomCuboid(4, 5, 3, 4, rng);
  const ProbabilityCuboid p = model.Forward(x);
  EXPECT_EQ(p.values().shape(), (Shape{4, 3, 5, 4}));
  for (const Position& pos : AllPositions(x)) {
    double sum = 0.0;
    for (double v : p.Pmf(pos)) {
      EXPECT_GT(v, 0.0);
      EXPECT_LT(v, 1.0);
      sum += v;
    }
    EXPECT_NEAR(sum, 1.0, 1e-12);
  }
}

TEST_P(ContextModelScheduleTest, MatchesNaiveNetwork) {
  Rng rng(3);
  const ContextModel model = RandomModel(SmallConfig(GetParam(), 4, 2), rng);
  const SymbolCuboid x = RandomCuboid(4, 3, 2, 4, rng);
  const Tensor got = model.Forward(x).values();
  const Tensor want = testing::NaiveForward(model, x);
  for (size_t e = 0; e < got.size(); ++e) EXPECT_NEAR(got[e], want[e], 1e-12);
}

TEST_P(ContextModelScheduleTest, OnePassMatchesPerPositionOracle) {
  Rng rng(4);
  const ContextModel model = RandomModel(SmallConfig(GetParam()), rng);
  const SymbolCuboid x = RandomCuboid(4, 4, 2, 2, rng);
  const ProbabilityCuboid p = model.Forward(x);
  for (const Position& pos : AllPositions(x)) {
    const std::vector<double> want = testing::PerPositionOracle(model, x, pos);
    const std::vector<double> got = p.Pmf(pos);
    for (size_t s = 0; s < want.size(); ++s) {
      EXPECT_NEAR(got[s], want[s], 1e-9);
    }
  }
}

TEST_P(ContextModelScheduleTest, NonContextPerturbationsLeavePmfUnchanged) {
  Rng rng(5);
  const Schedule schedule = GetParam();
  const ContextModel model = RandomModel(SmallConfig(schedule, 4, 3), rng);
  const SymbolCuboid x = RandomCuboid(4, 4, 3, 4, rng);
  const ProbabilityCuboid base = model.Forward(x);
  for (int trial = 0; trial < 20; ++trial) {
    const auto positions = AllPositions(x);
    const Position target = positions[rng.NextBelow(positions.size())];
    SymbolCuboid y = x;
    for (const Position& q : positions) {
      if (!testing::OracleInContext(schedule, target, q)) {
        y.set(q, static_cast<uint16_t>(rng.NextBelow(4)));
      }
    }
    EXPECT_EQ(model.Forward(y).Pmf(target), base.Pmf(target));
  }
}

TEST(ContextModelTest, RasterFirstPositionIgnoresInput) {
  Rng rng(6);
  const ContextModel model = RandomModel(SmallConfig(Schedule::kRaster, 2, 3), rng);
  const std::vector<double> first =
      model.Forward(RandomCuboid(3, 3, 3, 2, rng)).Pmf({0, 0, 0});
  for (int trial = 0; trial < 5; ++trial) {
    EXPECT_EQ(model.Forward(RandomCuboid(3, 3, 3, 2, rng)).Pmf({0, 0, 0}), first);
  }
}

INSTANTIATE_TEST_SUITE_P(Schedules, ContextModelScheduleTest,
                         ::testing::Values(Schedule::kRaster, Schedule::kSlope),
                         [](const auto& info) {
                           return std::string(ScheduleName(info.param));
                         });

TEST(ContextModelTest, LayerStack) {
  ModelConfig c = SmallConfig(Schedule::kSlope, 4, 3);
  c.groups = 3;
  c.residual_blocks = 2;
  const ContextModel model(c);
  const auto& layers = model.layers();
  ASSERT_EQ(layers.size(), 2u + 2u * 2u + 1u);
  EXPECT_EQ(layers[0].in_groups(), 1u);
  EXPECT_EQ(layers[0].mask().mode().layer_kind, LayerKind::kInput);
  for (size_t l = 1; l < layers.size(); ++l) {
    EXPECT_EQ(layers[l].mask().mode().layer_kind, LayerKind::kHidden);
    EXPECT_EQ(layers[l].in_groups(), 3u);
  }
  EXPECT_EQ(layers.back().out_groups(), 4u);
  for (const auto& layer : layers) {
    EXPECT_EQ(layer.mask().mode().schedule, Schedule::kSlope);
    EXPECT_EQ(layer.depth(), 3u);
  }
  size_t count = 0;
  for (const Tensor* t : model.Parameters()) count += t->size();
  EXPECT_EQ(model.ParameterCount(), count);
}

TEST(ContextModelTest, ConfigValidation) {
  ModelConfig c;
  c.alphabet_size = 1;
  EXPECT_THROW(ContextModel{c}, Error);
  c = ModelConfig{};
  c.groups = 0;
  EXPECT_THROW(ContextModel{c}, Error);
  c = ModelConfig{};
  c.depth = 0;
  EXPECT_THROW(ContextModel{c}, Error);
}

TEST(ContextModelTest, ForwardRejectsMismatchedCuboid) {
  const ContextModel model(SmallConfig(Schedule::kRaster, 2, 3));
  EXPECT_THROW(model.Forward(SymbolCuboid(2, 2, 2, 2)), Error);
  EXPECT_THROW(model.Forward(SymbolCuboid(2, 2, 3, 4)), Error);
}

TEST(EmbedSymbolsTest, ScalesByAlphabet) {
  const SymbolCuboid x(3, 1, 1, 4, {0, 1, 3});
  EXPECT_EQ(EmbedSymbols(x), Tensor({1, 1, 1, 3}, {0.0, 1.0 / 3.0, 1.0}));
  const SymbolCuboid b(2, 1, 1, 2, {1, 0});
  EXPECT_EQ(EmbedSymbols(b), Tensor({1, 1, 1, 2}, {1.0, 0.0}));
}

ProbabilityCuboid ConstantProbs(size_t m, size_t n, double p_first) {
  Tensor t({m, 1, 1, n});
  for (size_t e = 0; e < n; ++e) {
    t[e] = p_first;
    for (size_t s = 1; s < m; ++s) t[s * n + e] = (1.0 - p_first) / (m - 1);
  }
  return ProbabilityCuboid(t);
}

TEST(CodeLengthTest, UniformBinaryIsOneBitPerSymbol) {
  const SymbolCuboid x(10, 1, 1, 2, std::vector<uint16_t>(10, 1));
  EXPECT_DOUBLE_EQ(CodeLengthBits(ConstantProbs(2, 10, 0.5), x), 10.0);
}

TEST(CodeLengthTest, NearCertainIsNearlyFree) {
  const double eps = kProbabilityFloor;
  const SymbolCuboid x(10, 1, 1, 2, std::vector<uint16_t>(10, 0));
  const double bits = CodeLengthBits(ConstantProbs(2, 10, 1.0 - eps), x);
  EXPECT_NEAR(bits, -10.0 * std::log2(1.0 - eps), 1e-12);
  EXPECT_LT(bits, 1e-3);
}

TEST(CodeLengthTest, QuarterIsTwoBits) {
  const SymbolCuboid x(1, 1, 1, 4, {2});
  EXPECT_DOUBLE_EQ(CodeLengthBits(ConstantProbs(4, 1, 0.25), x), 2.0);
}

TEST(CodeLengthTest, ClampedAtFloor) {
  const SymbolCuboid x(1, 1, 1, 2, {1});
  EXPECT_DOUBLE_EQ(CodeLengthBits(ConstantProbs(2, 1, 1.0), x), 16.0);
}

TEST(CompressionRatioTest, Examples) {
  EXPECT_DOUBLE_EQ(CompressionRatio(4 * 3 * 2, 4, 3, 2, 2), 1.0);
  EXPECT_DOUBLE_EQ(CompressionRatio(4 * 3 * 2 / 2.0, 4, 3, 2, 2), 2.0);
  EXPECT_DOUBLE_EQ(CompressionRatio(4 * 3 * 2 * 2, 4, 3, 2, 4), 1.0);
  EXPECT_THROW(CompressionRatio(0.0, 1, 1, 1, 2), Error);
}

TEST(CompressionRatioTest, RatioTimesLossIsRawSize) {
  Rng rng(9);
  for (int i = 0; i < 20; ++i) {
    const double loss = rng.Uniform(1, 1000);
    const uint32_t m = 2 + static_cast<uint32_t>(rng.NextBelow(255));
    const double r = CompressionRatio(loss, 7, 5, 3, m);
    EXPECT_NEAR(r * loss, 7 * 5 * 3 * std::log2(m), 1e-9);
  }
}

TEST(GradientTest, FinalBiasUnderUniformPrediction) {
  // One position: d bits / d b(t) = (1/m - [t == s]) / ln 2.
  Rng rng(10);
  for (uint32_t m : {2u, 4u}) {
    ModelConfig c = SmallConfig(Schedule::kRaster, m, 1);
    const ContextModel model = ContextModel::Initialized(c, rng);
    const SymbolCuboid x(1, 1, 1, m, {1});
    const LossAndGradients lg = ComputeLossAndGradients(model, x);
    EXPECT_DOUBLE_EQ(lg.bits, std::log2(m));
    EXPECT_EQ(lg.symbols, 1u);
    const Tensor& grad_bias = lg.gradients.tensors.back();
    for (uint32_t t = 0; t < m; ++t) {
      const double want = (1.0 / m - (t == 1 ? 1.0 : 0.0)) / std::numbers::ln2;
      EXPECT_NEAR(grad_bias[t], want, 1e-15);
    }
  }
}

TEST(GradientTest, MatchesFiniteDifferences) {
  Rng rng(11);
  for (Schedule schedule : {Schedule::kRaster, Schedule::kSlope}) {
    ContextModel model = RandomModel(SmallConfig(schedule), rng);
    const SymbolCuboid x = RandomCuboid(4, 4, 2, 2, rng);
    const LossAndGradients lg = ComputeLossAndGradients(model, x);
    EXPECT_DOUBLE_EQ(lg.bits, CodeLengthBits(model.Forward(x), x));
    const auto params = model.Parameters();
    ASSERT_EQ(params.size(), lg.gradients.tensors.size());
    auto loss = [&] { return CodeLengthBits(model.Forward(x), x); };
    double worst = 0.0;
    for (size_t p = 0; p < params.size(); ++p) {
      for (size_t e = 0; e < params[p]->size(); ++e) {
        const double fd = testing::CentralDifference((*params[p])[e], 1e-5, loss);
        worst = std::max(worst, testing::RelativeError(
                                    lg.gradients.tensors[p][e], fd, 1e-2));
      }
    }
    EXPECT_LT(worst, 1e-4) << ScheduleName(schedule);
  }
}

TEST(GradientTest, DuplicatedBatchDoublesGradients) {
  Rng rng(12);
  const ContextModel model = RandomModel(SmallConfig(Schedule::kSlope, 4, 2), rng);
  const SymbolCuboid x = RandomCuboid(3, 3, 2, 4, rng);
  const LossAndGradients one = ComputeLossAndGradients(model, x);
  const std::vector<SymbolCuboid> batch = {x, x};
  const LossAndGradients two = ComputeBatchLossAndGradients(model, batch);
  EXPECT_EQ(two.bits, 2 * one.bits);
  EXPECT_EQ(two.symbols, 2 * one.symbols);
  for (size_t p = 0; p < one.gradients.tensors.size(); ++p) {
    EXPECT_EQ(two.gradients.tensors[p],
              Elementwise(ElementwiseOp::kMul, one.gradients.tensors[p], 2.0));
  }
}

TEST(GradientTest, BatchIsSumOfSamples) {
  Rng rng(13);
  const ContextModel model = RandomModel(SmallConfig(Schedule::kRaster), rng);
  const std::vector<SymbolCuboid> batch = {RandomCuboid(3, 2, 2, 2, rng),
                                           RandomCuboid(3, 2, 2, 2, rng),
                                           RandomCuboid(3, 2, 2, 2, rng)};
  LossAndGradients sum = ComputeLossAndGradients(model, batch[0]);
  for (size_t b = 1; b < batch.size(); ++b) {
    const LossAndGradients lg = ComputeLossAndGradients(model, batch[b]);
    sum.bits += lg.bits;
    sum.gradients.Add(lg.gradients);
  }
  const LossAndGradients got = ComputeBatchLossAndGradients(model, batch);
  EXPECT_EQ(got.bits, sum.bits);
  for (size_t p = 0; p < sum.gradients.tensors.size(); ++p) {
    EXPECT_EQ(got.gradients.tensors[p], sum.gradients.tensors[p]);
  }
}

}  // namespace
}  // namespace trimcode
