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

#ifndef TRIMCODE_ARITHMETIC_CODER_H_
#define TRIMCODE_ARITHMETIC_CODER_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace trimcode {

// Fixed-point PMF: m counts >= 1 summing to exactly 2^16.
class QuantizedPmf {
 public:
  static constexpr int kPrecisionBits = 16;
  static constexpr uint32_t kTotal = uint32_t{1} << kPrecisionBits;

  QuantizedPmf() = default;

  // counts = max(1, floor(p * 2^16)); a shortfall is then added one count at
  // a time by descending fractional remainder, and an excess (caused only by
  // the floor of one) removed from counts > 1 by ascending remainder. Ties
  // break toward the lower symbol index. Requires p > 0 and |sum p - 1| <=
  // 1e-9.
  static QuantizedPmf FromProbabilities(std::span<const double> p);
  static QuantizedPmf FromCounts(std::span<const uint32_t> counts);

  size_t size() const { return cumulative_.empty() ? 0 : cumulative_.size() - 1; }
  uint32_t count(size_t symbol) const {
    return cumulative_[symbol + 1] - cumulative_[symbol];
  }
  uint32_t cumulative(size_t symbol) const { return cumulative_[symbol]; }
  std::vector<uint32_t> Counts() const;

  // Largest symbol s with cumulative(s) <= target.
  uint32_t Lookup(uint32_t target) const;

  friend bool operator==(const QuantizedPmf&, const QuantizedPmf&) = default;

 private:
  std::vector<uint32_t> cumulative_;  // m + 1 entries, 0 .. 2^16
};

// Unsigned integer of the coder state; arithmetic wraps modulo 2^320.
using CoderWord = boost::multiprecision::number<
    boost::multiprecision::cpp_int_backend<
        320, 320, boost::multiprecision::unsigned_magnitude,
        boost::multiprecision::unchecked, void>>;

// Multi-symbol range coder with carry propagation.
//
// State is an interval [low, low + range) of 320-bit integers, read as a
// fraction of 2^320 at the current byte position. A symbol with cumulative
// count c and count f narrows it to
// [low + floor(range * c / 2^16), low + floor(range * (c + f) / 2^16)).
// The interval is never cut, and a carry out of `low` is added to the bytes
// already written. Renormalization shifts out one byte while
// range < 2^312.
//
// Each step's floor moves the interval by less than 2^-312 of its width, so
// as long as a sequence's self-information stays well below ~300 bits (any
// sequence of up to 16 symbols), the coded point lies inside the exact
// rational interval of textbook arithmetic coding.
//
// Termination writes the shortest big-endian prefix P (at least one byte)
// such that every continuation of P lies in the final interval. The decoder
// reads past the end as zero bytes, and after the last symbol checks that the
// stream ends exactly at P.
class ArithmeticEncoder {
 public:
  static constexpr int kStateBits = 320;
  static constexpr int kStateBytes = kStateBits / 8;

  ArithmeticEncoder();

  void Encode(uint32_t symbol, const QuantizedPmf& pmf);
  std::vector<uint8_t> Finish();

 private:
  void AddToLow(const CoderWord& delta);
  void PropagateCarry();
  void Normalize();

  CoderWord low_;
  CoderWord range_;
  std::vector<uint8_t> out_;
};

class ArithmeticDecoder {
 public:
  explicit ArithmeticDecoder(std::span<const uint8_t> data);

  uint32_t Decode(const QuantizedPmf& pmf);
  // Throws unless the stream terminates exactly where the encoder's did.
  void Finish() const;

 private:
  uint8_t NextByte();
  void Normalize();

  std::span<const uint8_t> data_;
  size_t read_ = 0;    // bytes pulled into the window, incl. padding
  size_t shifts_ = 0;  // renormalization shifts so far
  CoderWord low_;      // modulo 2^320
  CoderWord range_;
  CoderWord window_;   // the stream bytes at the current position
};

std::vector<uint8_t> AcEncode(std::span<const uint32_t> symbols,
                              std::span<const QuantizedPmf> pmfs);

// Supplies the PMF for step `index` given the symbols decoded so far.
using PmfSupplier =
    std::function<QuantizedPmf(size_t index, std::span<const uint32_t> decoded)>;

std::vector<uint32_t> AcDecode(std::span<const uint8_t> stream,
                               const PmfSupplier& supplier, size_t count);

// Ideal code length in bits of `symbols` under the quantized PMFs.
double QuantizedInformationBits(std::span<const uint32_t> symbols,
                                std::span<const QuantizedPmf> pmfs);

}  // namespace trimcode

#endif  // TRIMCODE_ARITHMETIC_CODER_H_
