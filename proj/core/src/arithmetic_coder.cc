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

#include "trimcode/arithmetic_coder.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "trimcode/error.h"

namespace trimcode {

namespace {

using boost::multiprecision::cpp_int_backend;
using boost::multiprecision::number;
using boost::multiprecision::unchecked;
using boost::multiprecision::unsigned_magnitude;

// Holds low + range and flush arithmetic without wrapping.
using WideWord =
    number<cpp_int_backend<384, 384, unsigned_magnitude, unchecked, void>>;

constexpr int kStateBits = ArithmeticEncoder::kStateBits;
constexpr int kTopShift = kStateBits - 8;
const CoderWord kBottom = CoderWord{1} << kTopShift;
const CoderWord kFullRange = ~CoderWord{0};

// floor(range * cumulative / 2^16), without overflowing the state width.
CoderWord ScaledOffset(const CoderWord& range, uint32_t cumulative) {
  constexpr int kBits = QuantizedPmf::kPrecisionBits;
  const CoderWord high = (range >> kBits) * cumulative;
  const uint64_t low_bits = static_cast<uint64_t>(range & 0xffff);
  return high + ((low_bits * cumulative) >> kBits);
}

uint8_t TopByte(const CoderWord& w) {
  return static_cast<uint8_t>(w >> kTopShift);
}

struct FlushPoint {
  int bytes;        // at least 1
  CoderWord value;  // prefix followed by zero bytes, modulo 2^320
  bool carry;       // the prefix lies at or past 2^320
};

// Shortest prefix whose every continuation stays inside [low, low + range).
FlushPoint ChooseFlush(const CoderWord& low, const CoderWord& range) {
  const WideWord wide_low{low};
  const WideWord high = wide_low + WideWord{range};
  for (int n = 1; n <= ArithmeticEncoder::kStateBytes; ++n) {
    const WideWord grain = WideWord{1} << (kStateBits - 8 * n);
    const WideWord start = (wide_low + grain - 1) / grain * grain;
    if (start + grain <= high) {
      return {n, static_cast<CoderWord>(start & WideWord{kFullRange}),
              (start >> kStateBits) != 0};
    }
  }
  // Unreachable: a grain of one always fits since range >= 1.
  return {ArithmeticEncoder::kStateBytes, low, false};
}

}  // namespace

QuantizedPmf QuantizedPmf::FromProbabilities(std::span<const double> p) {
  const size_t m = p.size();
  if (m < 2 || m > kTotal) {
    throw Error("PMF needs between 2 and 65536 entries, got " +
                std::to_string(m));
  }
  double sum = 0.0;
  for (double v : p) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw Error("PMF entries must be positive and finite");
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw Error("PMF does not sum to 1 (sum = " + std::to_string(sum) + ")");
  }

  std::vector<uint32_t> counts(m);
  std::vector<double> remainder(m);
  int64_t total = 0;
  for (size_t s = 0; s < m; ++s) {
    const double scaled = p[s] * kTotal;
    const double fl = std::floor(scaled);
    remainder[s] = scaled - fl;
    counts[s] = std::max<uint32_t>(1, static_cast<uint32_t>(fl));
    total += counts[s];
  }

  std::vector<uint32_t> order(m);
  std::iota(order.begin(), order.end(), 0u);
  if (total < kTotal) {
    std::stable_sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) {
      return remainder[a] > remainder[b];
    });
    for (size_t r = 0; total < kTotal; r = (r + 1) % m, ++total) {
      ++counts[order[r]];
    }
  } else if (total > kTotal) {
    std::stable_sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) {
      return remainder[a] < remainder[b];
    });
    while (total > kTotal) {
      for (uint32_t s : order) {
        if (total == kTotal) break;
        if (counts[s] > 1) {
          --counts[s];
          --total;
        }
      }
    }
  }
  return FromCounts(counts);
}

QuantizedPmf QuantizedPmf::FromCounts(std::span<const uint32_t> counts) {
  if (counts.size() < 2 || counts.size() > kTotal) {
    throw Error("PMF needs between 2 and 65536 entries");
  }
  QuantizedPmf pmf;
  pmf.cumulative_.resize(counts.size() + 1);
  uint64_t total = 0;
  for (size_t s = 0; s < counts.size(); ++s) {
    if (counts[s] == 0) throw Error("PMF counts must be at least 1");
    pmf.cumulative_[s] = static_cast<uint32_t>(total);
    total += counts[s];
  }
  if (total != kTotal) {
    throw Error("PMF counts sum to " + std::to_string(total) +
                ", expected 65536");
  }
  pmf.cumulative_.back() = kTotal;
  return pmf;
}

std::vector<uint32_t> QuantizedPmf::Counts() const {
  std::vector<uint32_t> counts(size());
  for (size_t s = 0; s < counts.size(); ++s) counts[s] = count(s);
  return counts;
}

uint32_t QuantizedPmf::Lookup(uint32_t target) const {
  // cumulative_[0] == 0 <= target, so the result is at least 1.
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end() - 1, target);
  return static_cast<uint32_t>(it - cumulative_.begin()) - 1;
}

ArithmeticEncoder::ArithmeticEncoder() : low_(0), range_(kFullRange) {}

void ArithmeticEncoder::Encode(uint32_t symbol, const QuantizedPmf& pmf) {
  if (symbol >= pmf.size()) {
    throw Error("symbol " + std::to_string(symbol) + " outside PMF of size " +
                std::to_string(pmf.size()));
  }
  const CoderWord lo = ScaledOffset(range_, pmf.cumulative(symbol));
  const CoderWord hi = ScaledOffset(range_, pmf.cumulative(symbol + 1));
  AddToLow(lo);
  range_ = hi - lo;
  Normalize();
}

void ArithmeticEncoder::AddToLow(const CoderWord& delta) {
  const CoderWord sum = low_ + delta;
  if (sum < low_) PropagateCarry();
  low_ = sum;
}

void ArithmeticEncoder::PropagateCarry() {
  // The interval never leaves [0, 1), so the carry is absorbed before running
  // off the front of the stream.
  for (auto it = out_.rbegin(); it != out_.rend(); ++it) {
    if (++*it != 0) break;
  }
}

void ArithmeticEncoder::Normalize() {
  while (range_ < kBottom) {
    out_.push_back(TopByte(low_));
    low_ <<= 8;
    range_ <<= 8;
  }
}

std::vector<uint8_t> ArithmeticEncoder::Finish() {
  const FlushPoint flush = ChooseFlush(low_, range_);
  if (flush.carry) PropagateCarry();
  for (int b = 0; b < flush.bytes; ++b) {
    out_.push_back(TopByte(flush.value << (8 * b)));
  }
  low_ = 0;
  range_ = kFullRange;
  return std::move(out_);
}

ArithmeticDecoder::ArithmeticDecoder(std::span<const uint8_t> data)
    : data_(data), low_(0), range_(kFullRange), window_(0) {
  if (data.empty()) throw Error("arithmetic-coded stream is empty");
  for (int b = 0; b < ArithmeticEncoder::kStateBytes; ++b) {
    window_ = (window_ << 8) | NextByte();
  }
}

uint8_t ArithmeticDecoder::NextByte() {
  // A valid stream ends with at least one flush byte, so the window never
  // needs more than kStateBytes - 1 bytes of zero padding.
  if (read_ >= data_.size() + ArithmeticEncoder::kStateBytes - 1) {
    throw Error("arithmetic-coded stream truncated");
  }
  const uint8_t byte = read_ < data_.size() ? data_[read_] : 0;
  ++read_;
  return byte;
}

uint32_t ArithmeticDecoder::Decode(const QuantizedPmf& pmf) {
  const CoderWord offset = window_ - low_;
  if (offset >= range_) throw Error("arithmetic-coded stream is corrupt");
  // Largest s with floor(range * cumulative(s) / 2^16) <= offset.
  uint32_t lo_sym = 0;
  uint32_t hi_sym = static_cast<uint32_t>(pmf.size());
  while (hi_sym - lo_sym > 1) {
    const uint32_t mid = lo_sym + (hi_sym - lo_sym) / 2;
    if (ScaledOffset(range_, pmf.cumulative(mid)) <= offset) {
      lo_sym = mid;
    } else {
      hi_sym = mid;
    }
  }
  const uint32_t symbol = lo_sym;
  const CoderWord lo = ScaledOffset(range_, pmf.cumulative(symbol));
  const CoderWord hi = ScaledOffset(range_, pmf.cumulative(symbol + 1));
  low_ += lo;
  range_ = hi - lo;
  Normalize();
  return symbol;
}

void ArithmeticDecoder::Normalize() {
  while (range_ < kBottom) {
    window_ = (window_ << 8) | NextByte();
    low_ <<= 8;
    range_ <<= 8;
    ++shifts_;
  }
}

void ArithmeticDecoder::Finish() const {
  const FlushPoint flush = ChooseFlush(low_, range_);
  if (data_.size() != shifts_ + static_cast<size_t>(flush.bytes)) {
    throw Error("arithmetic-coded stream length mismatch (truncated or "
                "trailing data)");
  }
  const int drop = kStateBits - 8 * flush.bytes;
  if ((window_ >> drop) != (flush.value >> drop)) {
    throw Error("arithmetic-coded stream has a bad termination");
  }
}

std::vector<uint8_t> AcEncode(std::span<const uint32_t> symbols,
                              std::span<const QuantizedPmf> pmfs) {
  if (symbols.size() != pmfs.size()) {
    throw Error("need exactly one PMF per symbol");
  }
  ArithmeticEncoder enc;
  for (size_t i = 0; i < symbols.size(); ++i) enc.Encode(symbols[i], pmfs[i]);
  return enc.Finish();
}

std::vector<uint32_t> AcDecode(std::span<const uint8_t> stream,
                               const PmfSupplier& supplier, size_t count) {
  ArithmeticDecoder dec(stream);
  std::vector<uint32_t> out;
  out.reserve(count);
  for (size_t i = 0; i < count; ++i) {
    const QuantizedPmf pmf = supplier(i, out);
    out.push_back(dec.Decode(pmf));
  }
  dec.Finish();
  return out;
}

double QuantizedInformationBits(std::span<const uint32_t> symbols,
                                std::span<const QuantizedPmf> pmfs) {
  double bits = 0.0;
  for (size_t i = 0; i < symbols.size(); ++i) {
    bits -= std::log2(static_cast<double>(pmfs[i].count(symbols[i])) /
                      QuantizedPmf::kTotal);
  }
  return bits;
}

}  // namespace trimcode
