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

#ifndef TRIMCODE_TRIM_CONV_H_
#define TRIMCODE_TRIM_CONV_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "trimcode/tensor.h"

namespace trimcode {

// Coding order over a W x H x C cuboid.
//   kRaster: i fastest, then j, then k.
//   kSlope:  by plane t = i + j + k; positions sharing t are independent.
enum class Schedule : uint32_t { kRaster = 0, kSlope = 1 };

const char* ScheduleName(Schedule s);
Schedule ParseSchedule(const char* name);

enum class LayerKind { kInput, kHidden };

struct MaskMode {
  Schedule schedule = Schedule::kRaster;
  LayerKind layer_kind = LayerKind::kInput;

  friend bool operator==(const MaskMode&, const MaskMode&) = default;
};

// Cuboid coordinate: i along width, j along height, k along depth.
struct Position {
  int i = 0;
  int j = 0;
  int k = 0;

  friend bool operator==(const Position&, const Position&) = default;
};

// True iff `candidate` is coded strictly before `target` under `schedule`,
// i.e. candidate belongs to the context of target.
bool InContext(Schedule schedule, const Position& target,
               const Position& candidate);

// Whether kernel offset (i, j, k) survives trimming under `mode`.
bool MaskPredicate(const MaskMode& mode, int i, int j, int k);

// Binary trimming mask over offsets i in [-w0, w0], j in [-h0, h0],
// k in [k_lo, k_hi].
class KernelMask {
 public:
  static KernelMask Build(const MaskMode& mode, int w0, int h0, int k_lo,
                          int k_hi);

  const MaskMode& mode() const { return mode_; }
  int w0() const { return w0_; }
  int h0() const { return h0_; }
  int k_lo() const { return k_lo_; }
  int k_hi() const { return k_hi_; }

  bool Contains(int i, int j, int k) const;
  bool at(int i, int j, int k) const;
  size_t CountOnes() const;

 private:
  KernelMask() = default;

  MaskMode mode_;
  int w0_ = 0, h0_ = 0, k_lo_ = 0, k_hi_ = 0;
  std::vector<uint8_t> entries_;  // [k][j][i]
};

// Masked 3D group convolution with a depth-complete kernel.
//
// Feature maps are tensors of shape {groups, C, H, W}: depth slowest and
// width fastest, so a linear scan of one group is the raster coding order.
//
// Weights have shape {out_groups * in_groups, C, C, K, K} with K = 2 * 2 + 1,
// indexed [g_out * in_groups + g_in][t][n][j + 2][i + 2] where t is the output
// depth slice, n the input depth slice and (i, j) the spatial offset. The
// mask is applied at offset (i, j, n - t). Bias has shape {out_groups, C}.
//
//   out(g', t, q, p) = b(g', t) + sum_{g, n, j, i : mask(i, j, n - t)}
//                      w(g', g, t, n, j, i) * x(g, n, q + j, p + i)
//
// Spatial reads outside the map are zero (pad 2). Masked weights are stored
// but never read, so their gradient is exactly zero.
class TrimmedConvLayer {
 public:
  static constexpr int kHalfWidth = 2;
  static constexpr int kKernel = 2 * kHalfWidth + 1;

  TrimmedConvLayer(size_t in_groups, size_t out_groups, size_t depth,
                   MaskMode mode);

  size_t in_groups() const { return in_groups_; }
  size_t out_groups() const { return out_groups_; }
  size_t depth() const { return depth_; }
  const KernelMask& mask() const { return mask_; }

  Tensor& weights() { return weights_; }
  const Tensor& weights() const { return weights_; }
  Tensor& bias() { return bias_; }
  const Tensor& bias() const { return bias_; }

  size_t WeightIndex(size_t g_out, size_t g_in, size_t t, size_t n, int j,
                     int i) const;
  // Unmasked (i, j, n) taps feeding output slice t.
  size_t ActiveTapCount(size_t t) const { return taps_[t].size(); }

  // Glorot-uniform over unmasked weights (fan counted per output slice over
  // active taps); masked weights are set to zero. Bias zero.
  void InitGlorot(Rng& rng);
  void InitZero();

  // Unmasked taps of one output slice that share input slice n and row
  // offset j and are consecutive in i, starting at i.
  struct TapRun {
    uint32_t n;
    int j;
    int i;
    int count;
    uint32_t weight_offset;  // of the first tap
  };

  Tensor Forward(const Tensor& x) const;

  struct Gradients {
    Tensor x;
    Tensor weights;
    Tensor bias;
  };
  Gradients Backward(const Tensor& x, const Tensor& grad_out) const;

  friend bool operator==(const TrimmedConvLayer& a,
                         const TrimmedConvLayer& b) {
    return a.in_groups_ == b.in_groups_ && a.out_groups_ == b.out_groups_ &&
           a.depth_ == b.depth_ && a.mask_.mode() == b.mask_.mode() &&
           a.weights_ == b.weights_ && a.bias_ == b.bias_;
  }

 private:
  struct Tap {
    uint32_t n;
    int j;
    int i;
    uint32_t weight_offset;  // within one (g_out, g_in, t) kernel
  };

  void CheckInput(const Tensor& x, size_t groups, const char* what) const;

  size_t in_groups_;
  size_t out_groups_;
  size_t depth_;
  KernelMask mask_;
  std::vector<std::vector<Tap>> taps_;     // per output slice t
  std::vector<std::vector<TapRun>> runs_;  // taps_ merged along i
  Tensor weights_;
  Tensor bias_;
};

}  // namespace trimcode

#endif  // TRIMCODE_TRIM_CONV_H_
