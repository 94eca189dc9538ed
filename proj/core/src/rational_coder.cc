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

#include "trimcode/rational_coder.h"

#include <string>

#include "trimcode/error.h"

namespace trimcode {

RationalInterval RationalEncode(std::span<const uint32_t> symbols,
                                std::span<const std::vector<Rational>> pmfs) {
  if (symbols.size() != pmfs.size()) {
    throw Error("need exactly one PMF per symbol");
  }
  RationalInterval interval;
  for (size_t i = 0; i < symbols.size(); ++i) {
    const auto& pmf = pmfs[i];
    Rational sum{0};
    for (const Rational& p : pmf) {
      if (p <= 0) throw Error("rational PMF entries must be positive");
      sum += p;
    }
    if (sum != 1) throw Error("rational PMF must sum to exactly 1");
    if (symbols[i] >= pmf.size()) throw Error("symbol outside rational PMF");

    Rational below{0};
    for (uint32_t s = 0; s < symbols[i]; ++s) below += pmf[s];
    interval.lower += interval.width * below;
    interval.width *= pmf[symbols[i]];
  }
  return interval;
}

std::vector<Rational> ExactPmf(const QuantizedPmf& pmf) {
  std::vector<Rational> out;
  out.reserve(pmf.size());
  for (size_t s = 0; s < pmf.size(); ++s) {
    out.emplace_back(pmf.count(s), QuantizedPmf::kTotal);
  }
  return out;
}

Rational StreamAsFraction(std::span<const uint8_t> bytes) {
  using boost::multiprecision::cpp_int;
  cpp_int numerator = 0;
  for (uint8_t b : bytes) numerator = (numerator << 8) | b;
  cpp_int denominator = cpp_int{1} << (8 * bytes.size());
  return Rational(numerator, denominator);
}

}  // namespace trimcode
