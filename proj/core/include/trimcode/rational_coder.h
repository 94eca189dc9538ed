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

#ifndef TRIMCODE_RATIONAL_CODER_H_
#define TRIMCODE_RATIONAL_CODER_H_

#include <cstdint>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "trimcode/arithmetic_coder.h"

namespace trimcode {

using Rational = boost::multiprecision::cpp_rational;

// Half-open [lower, lower + width) inside [0, 1).
struct RationalInterval {
  Rational lower{0};
  Rational width{1};

  Rational upper() const { return lower + width; }
  bool Contains(const Rational& x) const { return lower <= x && x < upper(); }
};

// Textbook arithmetic coding in exact arithmetic: starting from [0, 1), each
// symbol selects its sub-interval in proportion to the PMF. Each PMF must be
// positive and sum to exactly 1.
RationalInterval RationalEncode(std::span<const uint32_t> symbols,
                                std::span<const std::vector<Rational>> pmfs);

std::vector<Rational> ExactPmf(const QuantizedPmf& pmf);

// sum_i bytes[i] * 256^-(i + 1).
Rational StreamAsFraction(std::span<const uint8_t> bytes);

}  // namespace trimcode

#endif  // TRIMCODE_RATIONAL_CODER_H_
