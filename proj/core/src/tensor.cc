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

#include "trimcode/tensor.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "trimcode/error.h"

namespace trimcode {

size_t NumElements(const Shape& shape) {
  size_t n = 1;
  for (size_t d : shape) n *= d;
  return n;
}

std::string ShapeToString(const Shape& shape) {
  std::ostringstream os;
  os << '[';
  for (size_t i = 0; i < shape.size(); ++i) {
    if (i) os << 'x';
    os << shape[i];
  }
  os << ']';
  return os.str();
}

namespace {

void CheckRank(const Shape& shape) {
  if (shape.empty() || shape.size() > 5) {
    throw Error("tensor rank must be in [1, 5], got shape " +
                ShapeToString(shape));
  }
}

void CheckFinite(const Tensor& t, const char* what) {
  if (!t.AllFinite()) throw Error(std::string(what) + " produced a non-finite value");
}

}  // namespace

Tensor::Tensor(Shape shape, double fill)
    : shape_(std::move(shape)), data_(NumElements(shape_), fill) {
  CheckRank(shape_);
}

Tensor::Tensor(Shape shape, std::vector<double> data)
    : shape_(std::move(shape)), data_(std::move(data)) {
  CheckRank(shape_);
  if (data_.size() != NumElements(shape_)) {
    throw Error("tensor data length " + std::to_string(data_.size()) +
                " does not match shape " + ShapeToString(shape_));
  }
}

size_t Tensor::Offset(std::initializer_list<size_t> index) const {
  if (index.size() != shape_.size()) {
    throw Error("index rank does not match tensor rank");
  }
  size_t flat = 0;
  size_t axis = 0;
  for (size_t i : index) {
    if (i >= shape_[axis]) throw Error("tensor index out of range");
    flat = flat * shape_[axis] + i;
    ++axis;
  }
  return flat;
}

Tensor Tensor::Reshaped(Shape shape) const {
  if (NumElements(shape) != data_.size()) {
    throw Error("cannot reshape " + ShapeToString(shape_) + " to " +
                ShapeToString(shape));
  }
  return Tensor(std::move(shape), data_);
}

void Tensor::Fill(double value) { std::fill(data_.begin(), data_.end(), value); }

bool Tensor::AllFinite() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](double v) { return std::isfinite(v); });
}

Tensor Elementwise(ElementwiseOp op, const Tensor& a, const Tensor& b) {
  if (op == ElementwiseOp::kRelu) return Relu(a);
  if (a.shape() != b.shape()) {
    throw Error("elementwise shape mismatch: " + ShapeToString(a.shape()) +
                " vs " + ShapeToString(b.shape()));
  }
  Tensor out(a.shape());
  for (size_t i = 0; i < a.size(); ++i) {
    switch (op) {
      case ElementwiseOp::kAdd: out[i] = a[i] + b[i]; break;
      case ElementwiseOp::kSub: out[i] = a[i] - b[i]; break;
      case ElementwiseOp::kMul: out[i] = a[i] * b[i]; break;
      case ElementwiseOp::kRelu: break;
    }
  }
  CheckFinite(out, "elementwise op");
  return out;
}

Tensor Elementwise(ElementwiseOp op, const Tensor& a, double b) {
  if (op == ElementwiseOp::kRelu) return Relu(a);
  Tensor out(a.shape());
  for (size_t i = 0; i < a.size(); ++i) {
    switch (op) {
      case ElementwiseOp::kAdd: out[i] = a[i] + b; break;
      case ElementwiseOp::kSub: out[i] = a[i] - b; break;
      case ElementwiseOp::kMul: out[i] = a[i] * b; break;
      case ElementwiseOp::kRelu: break;
    }
  }
  CheckFinite(out, "elementwise op");
  return out;
}

Tensor Relu(const Tensor& a) {
  Tensor out(a.shape());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] > 0.0 ? a[i] : 0.0;
  return out;
}

double Dot(const Tensor& a, const Tensor& b) {
  if (a.size() != b.size()) throw Error("dot product size mismatch");
  double acc = 0.0;
  for (size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double Rng::NextDouble() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::Uniform(double lo, double hi) {
  // The sum can round up to hi.
  const double v = lo + (hi - lo) * NextDouble();
  return v < hi ? v : std::nextafter(hi, lo);
}

double Rng::Normal(double mean, double stddev) {
  // Marsaglia polar method.
  if (has_spare_normal_) {
    has_spare_normal_ = false;
    return mean + stddev * spare_normal_;
  }
  double u, v, s;
  do {
    u = 2.0 * NextDouble() - 1.0;
    v = 2.0 * NextDouble() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double scale = std::sqrt(-2.0 * std::log(s) / s);
  spare_normal_ = v * scale;
  has_spare_normal_ = true;
  return mean + stddev * u * scale;
}

uint64_t Rng::NextBelow(uint64_t n) {
  if (n == 0) throw Error("NextBelow requires n > 0");
  const uint64_t limit = ~uint64_t{0} - (~uint64_t{0} % n);
  uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % n;
}

Tensor FillRandom(const Shape& shape, const UniformDist& dist, Rng& rng) {
  if (!(dist.lo < dist.hi) || !std::isfinite(dist.lo) ||
      !std::isfinite(dist.hi)) {
    throw Error("uniform distribution requires finite lo < hi");
  }
  Tensor out(shape);
  for (double& v : out.values()) {
    v = rng.Uniform(dist.lo, dist.hi);
    // Rounding in lo + (hi - lo) * u can land exactly on hi.
    if (v >= dist.hi) v = std::nextafter(dist.hi, dist.lo);
  }
  return out;
}

Tensor FillRandom(const Shape& shape, const NormalDist& dist, Rng& rng) {
  if (!(dist.stddev > 0.0) || !std::isfinite(dist.mean) ||
      !std::isfinite(dist.stddev)) {
    throw Error("normal distribution requires finite mean and stddev > 0");
  }
  Tensor out(shape);
  for (double& v : out.values()) v = rng.Normal(dist.mean, dist.stddev);
  return out;
}

}  // namespace trimcode
