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

#include "trimcode/trim_conv.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <string>

#include "trimcode/error.h"
#include "trimcode/parallel.h"

namespace trimcode {

const char* ScheduleName(Schedule s) {
  return s == Schedule::kRaster ? "raster" : "slope";
}

Schedule ParseSchedule(const char* name) {
  if (std::strcmp(name, "raster") == 0) return Schedule::kRaster;
  if (std::strcmp(name, "slope") == 0) return Schedule::kSlope;
  throw Error(std::string("unknown schedule '") + name +
              "' (expected raster or slope)");
}

bool InContext(Schedule schedule, const Position& target,
               const Position& candidate) {
  if (schedule == Schedule::kSlope) {
    return candidate.i + candidate.j + candidate.k <
           target.i + target.j + target.k;
  }
  if (candidate.k != target.k) return candidate.k < target.k;
  if (candidate.j != target.j) return candidate.j < target.j;
  return candidate.i < target.i;
}

bool MaskPredicate(const MaskMode& mode, int i, int j, int k) {
  const bool hidden = mode.layer_kind == LayerKind::kHidden;
  if (mode.schedule == Schedule::kSlope) {
    return hidden ? i + j + k <= 0 : i + j + k < 0;
  }
  if (k < 0) return true;
  if (k > 0) return false;
  if (j < 0) return true;
  if (j > 0) return false;
  return hidden ? i <= 0 : i < 0;
}

KernelMask KernelMask::Build(const MaskMode& mode, int w0, int h0, int k_lo,
                             int k_hi) {
  if (w0 < 0 || h0 < 0 || k_lo > 0 || k_hi < 0) {
    throw Error("kernel mask requires w0, h0 >= 0 and k_lo <= 0 <= k_hi");
  }
  KernelMask mask;
  mask.mode_ = mode;
  mask.w0_ = w0;
  mask.h0_ = h0;
  mask.k_lo_ = k_lo;
  mask.k_hi_ = k_hi;
  mask.entries_.reserve(static_cast<size_t>(2 * w0 + 1) * (2 * h0 + 1) *
                        (k_hi - k_lo + 1));
  for (int k = k_lo; k <= k_hi; ++k) {
    for (int j = -h0; j <= h0; ++j) {
      for (int i = -w0; i <= w0; ++i) {
        mask.entries_.push_back(MaskPredicate(mode, i, j, k) ? 1 : 0);
      }
    }
  }
  return mask;
}

bool KernelMask::Contains(int i, int j, int k) const {
  return i >= -w0_ && i <= w0_ && j >= -h0_ && j <= h0_ && k >= k_lo_ &&
         k <= k_hi_;
}

bool KernelMask::at(int i, int j, int k) const {
  if (!Contains(i, j, k)) throw Error("kernel mask offset out of range");
  const size_t width = 2 * w0_ + 1;
  const size_t height = 2 * h0_ + 1;
  return entries_[((k - k_lo_) * height + (j + h0_)) * width + (i + w0_)] != 0;
}

size_t KernelMask::CountOnes() const {
  return std::count(entries_.begin(), entries_.end(), uint8_t{1});
}

TrimmedConvLayer::TrimmedConvLayer(size_t in_groups, size_t out_groups,
                                   size_t depth, MaskMode mode)
    : in_groups_(in_groups),
      out_groups_(out_groups),
      depth_(depth),
      mask_(KernelMask::Build(mode, kHalfWidth, kHalfWidth,
                              -static_cast<int>(depth) + 1,
                              static_cast<int>(depth) - 1)) {
  if (in_groups == 0 || out_groups == 0 || depth == 0) {
    throw Error("trimmed conv layer needs positive group counts and depth");
  }
  taps_.resize(depth);
  runs_.resize(depth);
  for (size_t t = 0; t < depth; ++t) {
    for (size_t n = 0; n < depth; ++n) {
      const int k = static_cast<int>(n) - static_cast<int>(t);
      for (int j = -kHalfWidth; j <= kHalfWidth; ++j) {
        for (int i = -kHalfWidth; i <= kHalfWidth; ++i) {
          if (!mask_.at(i, j, k)) continue;
          const uint32_t offset = static_cast<uint32_t>(
              (n * kKernel + (j + kHalfWidth)) * kKernel + (i + kHalfWidth));
          taps_[t].push_back({static_cast<uint32_t>(n), j, i, offset});
        }
      }
    }
    for (const Tap& tap : taps_[t]) {
      std::vector<TapRun>& runs = runs_[t];
      if (!runs.empty() && runs.back().n == tap.n && runs.back().j == tap.j &&
          runs.back().i + runs.back().count == tap.i) {
        ++runs.back().count;
      } else {
        runs.push_back({tap.n, tap.j, tap.i, 1, tap.weight_offset});
      }
    }
  }
  weights_ = Tensor({out_groups * in_groups, depth, depth, kKernel, kKernel});
  bias_ = Tensor({out_groups, depth});
}

size_t TrimmedConvLayer::WeightIndex(size_t g_out, size_t g_in, size_t t,
                                     size_t n, int j, int i) const {
  return weights_.Offset({g_out * in_groups_ + g_in, t, n,
                          static_cast<size_t>(j + kHalfWidth),
                          static_cast<size_t>(i + kHalfWidth)});
}

void TrimmedConvLayer::InitGlorot(Rng& rng) {
  weights_.Fill(0.0);
  bias_.Fill(0.0);
  const size_t kernel_size = depth_ * kKernel * kKernel;
  for (size_t go = 0; go < out_groups_; ++go) {
    for (size_t gi = 0; gi < in_groups_; ++gi) {
      for (size_t t = 0; t < depth_; ++t) {
        const double taps = static_cast<double>(taps_[t].size());
        const double bound =
            std::sqrt(6.0 / (taps * static_cast<double>(in_groups_) +
                             taps * static_cast<double>(out_groups_)));
        double* w = weights_.data() +
                    ((go * in_groups_ + gi) * depth_ + t) * kernel_size;
        for (const Tap& tap : taps_[t]) {
          w[tap.weight_offset] = rng.Uniform(-bound, bound);
        }
      }
    }
  }
}

void TrimmedConvLayer::InitZero() {
  weights_.Fill(0.0);
  bias_.Fill(0.0);
}

void TrimmedConvLayer::CheckInput(const Tensor& x, size_t groups,
                                  const char* what) const {
  if (x.rank() != 4 || x.dim(0) != groups || x.dim(1) != depth_) {
    throw Error(std::string(what) + " shape " + ShapeToString(x.shape()) +
                " incompatible with layer (groups " + std::to_string(groups) +
                ", depth " + std::to_string(depth_) + ")");
  }
}

namespace {

// Valid output range [lo, hi) along one axis of extent `extent` for a read
// at offset `d`.
inline void ValidRange(int extent, int d, int* lo, int* hi) {
  *lo = std::max(0, -d);
  *hi = std::min(extent, extent - d);
}

// AVX2 without FMA rounds exactly like the baseline build, so every clone
// produces bit-identical sums.
#if defined(__x86_64__) && defined(__GNUC__) && !defined(__clang__)
#define TRIMCODE_SIMD_CLONES __attribute__((target_clones("avx2", "default")))
#else
#define TRIMCODE_SIMD_CLONES
#endif

template <int kCount>
inline void AccumulateInteriorImpl(double* __restrict out,
                                   const double* __restrict in, const double* w,
                                   int lo, int hi) {
  for (int p = lo; p < hi; ++p) {
    double acc = out[p];
    for (int c = 0; c < kCount; ++c) acc += w[c] * in[p + c];
    out[p] = acc;
  }
}

TRIMCODE_SIMD_CLONES
void AccumulateInterior(int count, double* __restrict out,
                        const double* __restrict in, const double* w, int lo,
                        int hi) {
  switch (count) {
    case 1: AccumulateInteriorImpl<1>(out, in, w, lo, hi); break;
    case 2: AccumulateInteriorImpl<2>(out, in, w, lo, hi); break;
    case 3: AccumulateInteriorImpl<3>(out, in, w, lo, hi); break;
    case 4: AccumulateInteriorImpl<4>(out, in, w, lo, hi); break;
    default: AccumulateInteriorImpl<5>(out, in, w, lo, hi); break;
  }
}

// Weight gradient of a tap run: prod[c * width + p] += g[p] * in[p + c]
// accumulates per-column products over rows; ReduceRow then sums each row
// of `prod` in a fixed lane order, so every build agrees.
template <int kCount>
inline void CorrelateRowImpl(const double* __restrict g,
                             const double* __restrict in, int width,
                             double* __restrict prod) {
  for (int c = 0; c < kCount; ++c) {
    double* pc = prod + c * width;
    for (int p = 0; p < width; ++p) pc[p] += g[p] * in[p + c];
  }
}

TRIMCODE_SIMD_CLONES
void CorrelateRow(int count, const double* __restrict g,
                  const double* __restrict in, int width,
                  double* __restrict prod) {
  switch (count) {
    case 1: CorrelateRowImpl<1>(g, in, width, prod); break;
    case 2: CorrelateRowImpl<2>(g, in, width, prod); break;
    case 3: CorrelateRowImpl<3>(g, in, width, prod); break;
    case 4: CorrelateRowImpl<4>(g, in, width, prod); break;
    default: CorrelateRowImpl<5>(g, in, width, prod); break;
  }
}

// Sum with four interleaved partial sums, combined as (s0 + s1) + (s2 + s3).
double ReduceRow(const double* v, int n) {
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  int p = 0;
  for (; p + 4 <= n; p += 4) {
    s0 += v[p];
    s1 += v[p + 1];
    s2 += v[p + 2];
    s3 += v[p + 3];
  }
  if (p < n) s0 += v[p];
  if (p + 1 < n) s1 += v[p + 1];
  if (p + 2 < n) s2 += v[p + 2];
  return (s0 + s1) + (s2 + s3);
}

// Adjoint of a tap run along one row: out[q] += sum_c w[c] * g[q - c] for
// q in [0, width + kCount - 1). `g` must be readable (zero) for kCount - 1
// entries on both sides.
template <int kCount>
inline void ScatterRowImpl(double* __restrict out, const double* __restrict g,
                           const double* w, int width) {
  for (int q = 0; q < width + kCount - 1; ++q) {
    double acc = out[q];
    for (int c = 0; c < kCount; ++c) acc += w[c] * g[q - c];
    out[q] = acc;
  }
}

TRIMCODE_SIMD_CLONES
void ScatterRow(int count, double* __restrict out, const double* __restrict g,
                const double* w, int width) {
  switch (count) {
    case 1: ScatterRowImpl<1>(out, g, w, width); break;
    case 2: ScatterRowImpl<2>(out, g, w, width); break;
    case 3: ScatterRowImpl<3>(out, g, w, width); break;
    case 4: ScatterRowImpl<4>(out, g, w, width); break;
    default: ScatterRowImpl<5>(out, g, w, width); break;
  }
}

// Input planes with kHalfWidth zero columns on both sides of every row, so
// a tap run never needs a bounds check along i. A tap that falls on the
// padding adds w * 0, which leaves the sum unchanged.
class PaddedInput {
 public:
  explicit PaddedInput(const Tensor& x,
                       size_t pad = TrimmedConvLayer::kHalfWidth)
      : height_(x.dim(2)),
        width_(x.dim(3)),
        pad_(pad),
        stride_(width_ + 2 * pad),
        data_(x.dim(0) * x.dim(1) * height_ * stride_, 0.0) {
    const double* src = x.data();
    for (size_t plane = 0; plane < x.dim(0) * x.dim(1); ++plane) {
      for (size_t q = 0; q < height_; ++q) {
        std::copy_n(src + (plane * height_ + q) * width_, width_,
                    row(plane, q));
      }
    }
  }

  // Start of the real (unpadded) part of row q of a plane.
  const double* row(size_t plane, size_t q) const {
    return data_.data() + (plane * height_ + q) * stride_ + pad_;
  }

 private:
  double* row(size_t plane, size_t q) {
    return data_.data() + (plane * height_ + q) * stride_ + pad_;
  }

  size_t height_;
  size_t width_;
  size_t pad_;
  size_t stride_;
  std::vector<double> data_;
};

}  // namespace

Tensor TrimmedConvLayer::Forward(const Tensor& x) const {
  CheckInput(x, in_groups_, "trimmed conv input");
  const int height = static_cast<int>(x.dim(2));
  const int width = static_cast<int>(x.dim(3));
  const size_t plane = static_cast<size_t>(height) * width;
  const size_t kernel_size = depth_ * kKernel * kKernel;
  Tensor out({out_groups_, depth_, x.dim(2), x.dim(3)});
  double* result = out.data();
  const PaddedInput padded(x);

  ParallelFor(out_groups_, [&](size_t go) {
    for (size_t t = 0; t < depth_; ++t) {
      double* out_plane = result + (go * depth_ + t) * plane;
      std::fill(out_plane, out_plane + plane, bias_[go * depth_ + t]);
      for (size_t gi = 0; gi < in_groups_; ++gi) {
        const double* w =
            weights_.data() + ((go * in_groups_ + gi) * depth_ + t) * kernel_size;
        for (const TapRun& run : runs_[t]) {
          int q_lo, q_hi;
          ValidRange(height, run.j, &q_lo, &q_hi);
          for (int q = q_lo; q < q_hi; ++q) {
            AccumulateInterior(run.count,
                               out_plane + static_cast<size_t>(q) * width,
                               padded.row(gi * depth_ + run.n, q + run.j) +
                                   run.i,
                               w + run.weight_offset, 0, width);
          }
        }
      }
    }
  });
  return out;
}

TrimmedConvLayer::Gradients TrimmedConvLayer::Backward(
    const Tensor& x, const Tensor& grad_out) const {
  CheckInput(x, in_groups_, "trimmed conv input");
  CheckInput(grad_out, out_groups_, "trimmed conv output gradient");
  if (grad_out.dim(2) != x.dim(2) || grad_out.dim(3) != x.dim(3)) {
    throw Error("trimmed conv output gradient spatial shape mismatch");
  }
  const int height = static_cast<int>(x.dim(2));
  const int width = static_cast<int>(x.dim(3));
  const size_t plane = static_cast<size_t>(height) * width;
  const size_t kernel_size = depth_ * kKernel * kKernel;
  Gradients grads{Tensor(x.shape()), Tensor(weights_.shape()),
                  Tensor(bias_.shape())};
  const double* gout = grad_out.data();
  const PaddedInput padded(x);

  ParallelFor(out_groups_, [&](size_t go) {
    std::vector<double> prod(static_cast<size_t>(kKernel) * width);
    for (size_t t = 0; t < depth_; ++t) {
      const double* g_plane = gout + (go * depth_ + t) * plane;
      double sum = 0.0;
      for (size_t e = 0; e < plane; ++e) sum += g_plane[e];
      grads.bias[go * depth_ + t] = sum;
      for (size_t gi = 0; gi < in_groups_; ++gi) {
        double* gw = grads.weights.data() +
                     ((go * in_groups_ + gi) * depth_ + t) * kernel_size;
        for (const TapRun& run : runs_[t]) {
          std::fill_n(prod.begin(), run.count * width, 0.0);
          int q_lo, q_hi;
          ValidRange(height, run.j, &q_lo, &q_hi);
          for (int q = q_lo; q < q_hi; ++q) {
            CorrelateRow(run.count, g_plane + static_cast<size_t>(q) * width,
                         padded.row(gi * depth_ + run.n, q + run.j) + run.i,
                         width, prod.data());
          }
          for (int c = 0; c < run.count; ++c) {
            gw[run.weight_offset + c] = ReduceRow(prod.data() + c * width, width);
          }
        }
      }
    }
  });

  // grad_x accumulates into rows padded like PaddedInput; contributions that
  // land on the padding belong to out-of-map reads and are dropped.
  const size_t stride = static_cast<size_t>(width) + 2 * kHalfWidth;
  std::vector<double> gx_padded(in_groups_ * depth_ * height * stride, 0.0);
  const PaddedInput padded_grad(grad_out, kKernel - 1);
  ParallelFor(in_groups_, [&](size_t gi) {
    for (size_t go = 0; go < out_groups_; ++go) {
      for (size_t t = 0; t < depth_; ++t) {
        const double* w =
            weights_.data() + ((go * in_groups_ + gi) * depth_ + t) * kernel_size;
        for (const TapRun& run : runs_[t]) {
          int q_lo, q_hi;
          ValidRange(height, run.j, &q_lo, &q_hi);
          for (int q = q_lo; q < q_hi; ++q) {
            double* gx_row = gx_padded.data() +
                             ((gi * depth_ + run.n) * height + q + run.j) * stride +
                             kHalfWidth + run.i;
            ScatterRow(run.count, gx_row,
                       padded_grad.row(go * depth_ + t, q),
                       w + run.weight_offset, width);
          }
        }
      }
    }
    for (size_t n = 0; n < depth_; ++n) {
      for (int q = 0; q < height; ++q) {
        const double* src = gx_padded.data() +
                            ((gi * depth_ + n) * height + q) * stride + kHalfWidth;
        std::copy_n(src, width,
                    grads.x.data() + (gi * depth_ + n) * plane +
                        static_cast<size_t>(q) * width);
      }
    }
  });
  return grads;
}

}  // namespace trimcode
