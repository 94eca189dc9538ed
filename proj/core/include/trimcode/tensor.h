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

#ifndef TRIMCODE_TENSOR_H_
#define TRIMCODE_TENSOR_H_

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace trimcode {

using Shape = std::vector<size_t>;

size_t NumElements(const Shape& shape);
std::string ShapeToString(const Shape& shape);

// Dense row-major array of doubles (last index fastest), rank 1 to 5.
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(Shape shape, double fill = 0.0);
  Tensor(Shape shape, std::vector<double> data);

  const Shape& shape() const { return shape_; }
  size_t rank() const { return shape_.size(); }
  size_t dim(size_t axis) const { return shape_[axis]; }
  size_t size() const { return data_.size(); }

  std::span<double> values() { return data_; }
  std::span<const double> values() const { return data_; }
  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }

  double& operator[](size_t flat) { return data_[flat]; }
  double operator[](size_t flat) const { return data_[flat]; }

  // Flat offset of a multi-index; bounds are checked.
  size_t Offset(std::initializer_list<size_t> index) const;
  double& at(std::initializer_list<size_t> index) { return data_[Offset(index)]; }
  double at(std::initializer_list<size_t> index) const {
    return data_[Offset(index)];
  }

  Tensor Reshaped(Shape shape) const;
  void Fill(double value);
  bool AllFinite() const;

  friend bool operator==(const Tensor& a, const Tensor& b) = default;

 private:
  Shape shape_;
  std::vector<double> data_;
};

enum class ElementwiseOp { kAdd, kSub, kMul, kRelu };

// Pure elementwise ops. kRelu ignores `b` (max(a, 0)); the others require
// equal shapes or use the scalar overload.
Tensor Elementwise(ElementwiseOp op, const Tensor& a, const Tensor& b);
Tensor Elementwise(ElementwiseOp op, const Tensor& a, double b);
Tensor Relu(const Tensor& a);

double Dot(const Tensor& a, const Tensor& b);

// Seeded mt19937_64 stream. Floating draws are derived from raw 64-bit output
// by hand rather than through <random> distributions, whose output is not
// specified identically across standard library implementations.
class Rng {
 public:
  static constexpr const char* kAlgorithm = "mt19937_64";

  explicit Rng(uint64_t seed) : seed_(seed), engine_(seed) {}

  uint64_t seed() const { return seed_; }
  uint64_t NextU64() { return engine_(); }
  // Uniform in [0, 1) with 53 random bits.
  double NextDouble();
  double Uniform(double lo, double hi);
  double Normal(double mean, double stddev);
  // Uniform integer in [0, n), n > 0; rejection sampling, no modulo bias.
  uint64_t NextBelow(uint64_t n);
  bool Bernoulli(double p) { return NextDouble() < p; }

 private:
  uint64_t seed_;
  std::mt19937_64 engine_;
  bool has_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

struct UniformDist {
  double lo;
  double hi;
};
struct NormalDist {
  double mean;
  double stddev;
};

Tensor FillRandom(const Shape& shape, const UniformDist& dist, Rng& rng);
Tensor FillRandom(const Shape& shape, const NormalDist& dist, Rng& rng);

}  // namespace trimcode

#endif  // TRIMCODE_TENSOR_H_
